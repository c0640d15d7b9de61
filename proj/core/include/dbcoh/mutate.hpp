#pragma once

// Chain-level Hom, mutations, braid action, helices and the verdicts built
// on them.

#include "dbcoh/cohom.hpp"
#include "dbcoh/ktheory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dbcoh {

/// The complex Hom^*(E, F) of chain-level maps:
///   Hom^k = prod_t Hom(E^t, F^{t+k}),   D(phi) = d_F phi - (-1)^k phi d_E.
/// Its cohomology is Hom^k in D^b(P^m) as long as every twist gap b - a
/// between a source summand O(a) and a target summand O(b) is >= -m.
class HomComplex {
 public:
  /// Throws MathError when some twist gap is below -m.
  HomComplex(DObject source, DObject target);

  const DObject& source() const { return source_; }
  const DObject& target() const { return target_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t dim(int k) const;
  /// D : Hom^k -> Hom^{k+1}.
  QMatrix differential(int k) const;
  ChainMap to_chain_map(int k, const std::vector<Rational>& coords) const;

  HomTable dims() const;

 private:
  struct Layout {
    std::size_t dim = 0;
    // offset[t][r][c] of the block Hom(E^t_c, F^{t+k}_r); npos when zero.
    std::map<int, std::vector<std::vector<std::size_t>>> offset;
  };
  const Layout& layout(int k) const;

  DObject source_, target_;
  int m_;
  int lo_ = 0, hi_ = -1;
  std::map<int, Layout> layouts_;
};

/// Basis of Hom^s(E, F) by chain-level representatives.  `source` is the
/// model of E the maps start from (twists lowered into range of F).
struct HomBasis {
  int degree = 0;
  DObject source;
  std::vector<ChainMap> maps;
  std::size_t dim() const { return maps.size(); }
};

/// E lowered so that its twists are <= min twist of F + m.
DObject hom_source_model(const DObject& e, const DObject& f);
HomBasis hom_chain_basis(const DObject& e, const DObject& f, int s);
/// All degrees at once: dimensions only.
HomTable hom_chain_dims(const DObject& e, const DObject& f);

struct IsoResult {
  enum class Kind { isomorphic, not_isomorphic, probably_not_isomorphic };
  Kind kind = Kind::probably_not_isomorphic;
  std::string reason;
  int trials_used = 0;
  bool accepted() const { return kind == Kind::isomorphic; }
};

const char* to_string(IsoResult::Kind k);

/// Exact on acceptance: a random degree-0 map whose cone is contractible.
IsoResult iso_test(const DObject& e, const DObject& f, int trials = 8, std::uint64_t seed = 0);

/// Fits into E2[-1] -> L -> Hom^*(E1, E2) (x) E1 -> E2.
DObject left_mutation(const DObject& e1, const DObject& e2);
/// Fits into E1 -> Hom^*(E1, E2)^* (x) E2 -> R -> E1[1].
DObject right_mutation(const DObject& e1, const DObject& e2);

struct Collection {
  int m = 1;
  std::vector<DObject> objects;
  std::size_t size() const { return objects.size(); }
};

/// Beilinson collection O, O(1), ..., O(m).
Collection beilinson(int m);

struct CollectionVerdict {
  bool objects_exceptional = false;
  bool exceptional = false;
  bool strict = false;
  bool k0_basis = false;  ///< necessary condition for fullness only
  std::map<std::pair<std::size_t, std::size_t>, HomTable> homs;
  CheckReport report;  ///< fails unless the collection is exceptional
};

CollectionVerdict check_collection(const Collection& c);

struct BraidLetter {
  enum class Kind { sigma, shift };
  Kind kind = Kind::sigma;
  int index = 1;  ///< 1-based position
  int value = 1;  ///< +1 / -1 for sigma, the shift amount for shift
};

struct BraidWord {
  std::vector<BraidLetter> letters;
};

/// sigma_i  : (E_i, E_{i+1}) -> (L_{E_i} E_{i+1}, E_i)
/// sigma_i^-1: (E_i, E_{i+1}) -> (E_{i+1}, R_{E_{i+1}} E_i)
/// Refuses non-exceptional input; with recheck, every intermediate
/// collection is checked and a failure throws.
Collection apply_braid(const Collection& c, const BraidWord& w, bool recheck = true);

/// Seeded random word of the given length in sigma_i^{+-1}.
BraidWord random_braid_word(std::size_t n, std::size_t length, std::uint64_t seed);

struct Helix {
  int m = 1;
  std::size_t n = 0;
  std::map<int, DObject> objects;  ///< E_i, base at 1..n
  const DObject& at(int i) const;
  int lo() const { return objects.begin()->first; }
  int hi() const { return objects.rbegin()->first; }
};

/// E_{i+n} = R_{E_{i+n-1}} ... R_{E_{i+1}} E_i,
/// E_i     = L_{E_{i+1}} ... L_{E_{i+n-1}} E_{i+n}.
Helix helix_extend(const Collection& c, int lo, int hi);
/// E_{i-n} ~ serre(E_i)[-n+1] for all materialized pairs.
CheckReport helix_serre_check(const Helix& h, int trials = 8, std::uint64_t seed = 0);

/// Hom^s(E_i, E_j) = 0 for s > 0 when i <= j, and for s < n-1 when i > j;
/// the diagonal i = j reading is reported as notes.  Also checks
/// dim Hom^s(E_i, E_j) = dim Hom^{n-1-s}(E_{j+n}, E_i) within the window.
CheckReport proposition_sweep(const Helix& h, int lo, int hi);

struct TheoremVerdict {
  bool hypothesis = false;  ///< strict exceptional with a K_0 basis
  bool conclusion = false;  ///< all shifted bundles with one common shift
  std::vector<BundleVerdict> bundles;
  CheckReport report;
};

TheoremVerdict verify_theorem(const Collection& c, std::uint64_t seed = 0);

struct CorollaryVerdict {
  bool shifted_bundle = false;
  int n_eff = 0;
  HomTable self_homs;  ///< Hom^*(E, E(n_eff (m+1)))
  bool agrees = false;  ///< with is_shifted_bundle
};

CorollaryVerdict corollary_detect(const DObject& e, int n_max = 1, std::uint64_t seed = 0);

/// U in D^{>=0} iff Hom^{<0}(E_i, U (x) O(N(m+1))) = 0 for the probes;
/// the verdict is cross-checked against the sheaf profile.
struct HeartVerdict {
  bool in_D_ge0 = false;
  bool matches_profile = false;
};
HeartVerdict heart_detect(const DObject& u, const Collection& probes, int n_max = 1);

}  // namespace dbcoh
