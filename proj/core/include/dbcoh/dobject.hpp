#pragma once

// Objects of D^b_coh(P^m) as bounded complexes of sums of line bundles.
//
// Conventions, fixed once:
//   * E[k]^t = E^{t+k}, with differential (-1)^k d_E.
//   * cone(f: E -> F)^t = F^t (+) E^{t+1}, differential [[d_F, f], [0, -d_E]].
//   * dual(E)^t = O(-a) for each O(a) in E^{-t}, differential the plain
//     transpose of d_E^{-t-1}; dual(dual(E)) == E on the nose.
//   * (E (x) F)^n = (+)_{p+q=n} E^p (x) F^q ordered by p, then by the
//     summand of E, then by the summand of F; d = d_E (x) 1 + (-1)^p 1 (x) d_F.

#include "dbcoh/polyring.hpp"
#include "dbcoh/report.hpp"

#include <map>
#include <optional>
#include <vector>

namespace dbcoh {

class DObject {
 public:
  explicit DObject(int m = 1);

  /// O(d) placed in homological degree t.
  static DObject line_bundle(int m, int d, int t = 0);

  int m() const { return m_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<int, std::vector<int>>& terms() const { return terms_; }
  const std::vector<int>& term(int t) const;
  /// d^t : E^t -> E^{t+1}; a zero matrix of the right shape when absent.
  PolyMatrix diff(int t) const;
  const PolyMatrix* diff_ptr(int t) const;
  const std::map<int, PolyMatrix>& diffs() const { return diffs_; }

  /// Replace the twists at degree t (drops the adjacent differentials).
  void set_term(int t, std::vector<int> twists);
  /// Throws MathError when the matrix twists disagree with the terms.
  void set_diff(int t, PolyMatrix d);

  int min_degree() const;
  int max_degree() const;
  int min_twist() const;
  int max_twist() const;
  std::size_t summands() const;
  /// Number of homological degrees carrying a nonzero term.
  std::size_t length() const { return terms_.size(); }

  friend bool operator==(const DObject& a, const DObject& b) = default;

 private:
  int m_;
  std::map<int, std::vector<int>> terms_;
  std::map<int, PolyMatrix> diffs_;
};

/// Morphism of complexes of a fixed homological degree: component t maps
/// E^t -> F^{t + degree}.
struct ChainMap {
  int degree = 0;
  std::map<int, PolyMatrix> components;

  PolyMatrix component(const DObject& source, const DObject& target, int t) const;
};

/// d o d = 0, matching shapes, nonempty terms only.
CheckReport validate(const DObject& e);

DObject shift(const DObject& e, int k);
DObject twist(const DObject& e, int k);
DObject dual(const DObject& e);
DObject direct_sum(const DObject& e, const DObject& f);
DObject tensor(const DObject& e, const DObject& f);

/// Chain map check for a degree-0 map: f d_E = d_F f componentwise.
/// Returns the first offending degree, if any.
std::optional<int> chain_map_defect(const ChainMap& f, const DObject& e, const DObject& g);
/// Mapping cone of a degree-0 chain map; throws MathError naming the
/// offending degree when f is not a chain map.
DObject cone(const ChainMap& f, const DObject& e, const DObject& g);

/// Gaussian elimination of every invertible scalar entry.
DObject minimize(const DObject& e);

enum class WindowMode { raise_min, lower_max };
/// Quasi-isomorphic minimal object with min twist >= bound (raise_min) or
/// max twist <= bound (lower_max).
DObject window_normalize(const DObject& e, WindowMode mode, int bound);
DObject raise_min_to(const DObject& e, int bound);
DObject lower_max_to(const DObject& e, int bound);
/// Minimal model inside a window [b, b + m], choosing b greedily to keep
/// the number of summands small.
DObject compact(const DObject& e);
/// Minimal model with twists in [b, b + m]; such a model is unique up to
/// isomorphism of complexes.
DObject window_model(const DObject& e, int b);

/// F(E) = E (x) omega [m] with omega = O(-m-1).
DObject serre(const DObject& e);

enum class KoszulDirection { raise, lower };
/// The exact complex quasi-isomorphic to O: for raise, Lambda^{q+1} (x) O(q+1)
/// in degrees q = 0..m; for lower, its dual.
DObject koszul_unit(int m, KoszulDirection dir);
/// Koszul complex of the given forms: Lambda^p in degree -p, O in degree 0.
DObject koszul_complex(int m, const std::vector<Poly>& forms);
/// Koszul resolution of the structure sheaf of a rational point.
DObject point_complex(const RPoint& p);

/// Per-degree sorted twist lists: equal for isomorphic minimal models that
/// live in one common window.
std::map<int, std::vector<int>> twist_profile(const DObject& e);

}  // namespace dbcoh
