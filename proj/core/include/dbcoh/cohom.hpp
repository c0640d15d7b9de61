#pragma once

// Cohomological functionals on D^b(P^m): hypercohomology, Hom^s, cohomology
// sheaves, derived fibers at rational points and the local-freeness checks.

#include "dbcoh/dobject.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

namespace dbcoh {

/// dim Hom^s(E, F) for each s with a nonzero value.
struct HomTable {
  std::map<int, std::size_t> entries;

  std::size_t at(int s) const;
  bool is_zero() const { return entries.empty(); }
  long euler_characteristic() const;
  friend bool operator==(const HomTable&, const HomTable&) = default;
};

HomTable make_table(const std::map<int, std::size_t>& dims);

enum class CohomMode { oracle, computed };

/// dim H^q(P^m, O(d)), nonzero entries only.
std::map<int, std::size_t> line_cohomology(int m, int d, CohomMode mode);

/// Termwise degree-0 graded pieces.  Throws MathError on a twist below -m,
/// where the naive complex stops computing hypercohomology.
VComplex global_sections_complex(const DObject& e);

/// Degree-d slice of the graded module complex: (+) S_{d+a} termwise.
VComplex graded_slice(const DObject& e, int d);

/// H^s(P^m, E) for every s.
HomTable hypercohomology(const DObject& e);

/// RHom(E, F) = dual(E) (x) F.
DObject rhom(const DObject& e, const DObject& f);
HomTable hom_total(const DObject& e, const DObject& f);

/// Vanishing of the cohomology sheaves H^s(E).
struct SheafCohProfile {
  /// nullopt: H^s(E) = 0; otherwise a module degree with nonzero cohomology.
  std::map<int, std::optional<int>> per_degree;
  int window_bound = 0;

  std::vector<int> nonvanishing() const;
  bool in_D_le0() const;
  bool in_D_ge0() const;
  /// The single nonvanishing degree of a pure object.
  std::optional<int> pure_degree() const;
};

SheafCohProfile sheaf_cohomology_profile(const DObject& e);

/// dim H^s(E (x)^L k(p)).
std::map<int, std::size_t> fiber_probe(const DObject& e, const RPoint& p);

/// Seeded random rational point with integer coordinates in [-bound, bound].
RPoint random_point(int m, std::mt19937_64& rng, int bound = 5);

struct BundleVerdict {
  bool yes = false;
  int shift = 0;  ///< E ~ V[-shift]: the cohomology sits in degree shift
  std::size_t rank = 0;
  std::string reason;
  bool probabilistic = false;  ///< rank constancy was only sampled
};

/// E pure in degree a and dual(E) pure in degree -a; rank from fiber probes
/// at `points` seeded points (default m + 2).
BundleVerdict is_shifted_bundle(const DObject& e, std::uint64_t seed = 0, int points = -1);

struct MainLemmaVerdict {
  bool rhom_in_le0 = false;
  BundleVerdict bundle;
  CheckReport report;  ///< pass iff the two sides agree
};

MainLemmaVerdict main_lemma_predicate(const DObject& e, std::uint64_t seed = 0);

}  // namespace dbcoh
