#include "dbcoh/cohom.hpp"

#include <algorithm>

namespace dbcoh {

std::size_t HomTable::at(int s) const {
  auto it = entries.find(s);
  return it == entries.end() ? 0 : it->second;
}

long HomTable::euler_characteristic() const {
  long chi = 0;
  for (const auto& [s, d] : entries) chi += (s % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return chi;
}

HomTable make_table(const std::map<int, std::size_t>& dims) {
  HomTable t;
  for (const auto& [s, d] : dims)
    if (d != 0) t.entries[s] = d;
  return t;
}

std::map<int, std::size_t> line_cohomology(int m, int d, CohomMode mode) {
  if (m < 1) throw MathError("line_cohomology: m must be positive");
  if (mode == CohomMode::computed) return hypercohomology(DObject::line_bundle(m, d)).entries;
  std::map<int, std::size_t> out;
  if (d >= 0) out[0] = binomial(d + m, m);
  if (d <= -m - 1) out[m] = binomial(-d - 1, m);
  return out;
}

VComplex graded_slice(const DObject& e, int d) {
  if (e.is_zero()) return {};
  const int lo = e.min_degree(), hi = e.max_degree();
  std::vector<std::size_t> dims;
  std::vector<QMatrix> diffs;
  for (int t = lo; t <= hi; ++t) dims.push_back(graded_offsets(e.term(t), e.m(), d).back());
  for (int t = lo; t < hi; ++t) {
    if (const auto* dt = e.diff_ptr(t))
      diffs.push_back(graded_piece(*dt, e.m(), d));
    else
      diffs.emplace_back(dims[static_cast<std::size_t>(t - lo + 1)], dims[static_cast<std::size_t>(t - lo)]);
  }
  return VComplex(lo, std::move(dims), std::move(diffs));
}

VComplex global_sections_complex(const DObject& e) {
  if (!e.is_zero() && e.min_twist() < -e.m())
    throw MathError("global_sections_complex: twist " + std::to_string(e.min_twist()) +
                    " below -m; normalize the window first");
  return graded_slice(e, 0);
}

HomTable hypercohomology(const DObject& e) {
  if (e.is_zero()) return {};
  const DObject w = raise_min_to(e, -e.m());
  return make_table(cohomology_dims(global_sections_complex(w)));
}

DObject rhom(const DObject& e, const DObject& f) { return tensor(dual(e), f); }

HomTable hom_total(const DObject& e, const DObject& f) {
  if (e.m() != f.m()) throw MathError("hom_total: objects live on different P^m");
  return hypercohomology(rhom(e, f));
}

// ---------------------------------------------------------------------------

std::vector<int> SheafCohProfile::nonvanishing() const {
  std::vector<int> out;
  for (const auto& [s, w] : per_degree)
    if (w) out.push_back(s);
  return out;
}

bool SheafCohProfile::in_D_le0() const {
  for (const auto& [s, w] : per_degree)
    if (w && s > 0) return false;
  return true;
}

bool SheafCohProfile::in_D_ge0() const {
  for (const auto& [s, w] : per_degree)
    if (w && s < 0) return false;
  return true;
}

std::optional<int> SheafCohProfile::pure_degree() const {
  const auto nv = nonvanishing();
  if (nv.size() != 1) return std::nullopt;
  return nv.front();
}

SheafCohProfile sheaf_cohomology_profile(const DObject& input) {
  SheafCohProfile prof;
  for (const auto& [t, tw] : input.terms()) prof.per_degree[t] = std::nullopt;
  const DObject e = minimize(input);
  if (e.is_zero()) return prof;
  const int m = e.m();
  const int ell = static_cast<int>(e.length());
  // Polynomial-degree headroom above the top twist, as a module degree.
  const int bound = (e.max_twist() - e.min_twist()) + (m + 1) * (ell + 1) - e.min_twist();
  prof.window_bound = bound;
  std::vector<int> degrees;
  for (int d = bound - (m + 1); d <= bound; ++d) degrees.push_back(d);
  degrees.push_back(bound + m + 1);
  for (int d : degrees) {
    for (const auto& [s, dim] : cohomology_dims(graded_slice(e, d))) {
      auto& slot = prof.per_degree[s];
      if (dim != 0 && !slot) slot = d;
    }
  }
  return prof;
}

std::map<int, std::size_t> fiber_probe(const DObject& e, const RPoint& p) {
  if (p.ambient_dim() != e.m()) throw MathError("fiber_probe: point of the wrong dimension");
  if (e.is_zero()) return {};
  const int lo = e.min_degree(), hi = e.max_degree();
  std::vector<std::size_t> dims;
  std::vector<QMatrix> diffs;
  for (int t = lo; t <= hi; ++t) dims.push_back(e.term(t).size());
  for (int t = lo; t < hi; ++t) {
    if (const auto* dt = e.diff_ptr(t))
      diffs.push_back(evaluate_at_point(*dt, p));
    else
      diffs.emplace_back(dims[static_cast<std::size_t>(t - lo + 1)], dims[static_cast<std::size_t>(t - lo)]);
  }
  return make_table(cohomology_dims(VComplex(lo, std::move(dims), std::move(diffs)))).entries;
}

RPoint random_point(int m, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  while (true) {
    std::vector<Rational> c;
    bool nonzero = false;
    for (int i = 0; i <= m; ++i) {
      const int v = dist(rng);
      nonzero = nonzero || v != 0;
      c.emplace_back(v);
    }
    if (nonzero) return RPoint(std::move(c));
  }
}

BundleVerdict is_shifted_bundle(const DObject& e, std::uint64_t seed, int points) {
  BundleVerdict v;
  const auto a = sheaf_cohomology_profile(e).pure_degree();
  if (!a) {
    v.reason = "not pure";
    return v;
  }
  const auto b = sheaf_cohomology_profile(dual(e)).pure_degree();
  if (!b || *b != -*a) {
    v.reason = "dual not pure in degree " + std::to_string(-*a);
    return v;
  }
  v.shift = *a;
  std::mt19937_64 rng(seed);
  const int n = points > 0 ? points : e.m() + 2;
  const DObject small = minimize(e);
  for (int k = 0; k < n; ++k) {
    const auto fib = fiber_probe(small, random_point(e.m(), rng));
    if (fib.size() != 1 || fib.begin()->first != *a) {
      v.reason = "fiber cohomology not concentrated in degree " + std::to_string(*a);
      return v;
    }
    if (k == 0) v.rank = fib.begin()->second;
    if (fib.begin()->second != v.rank) {
      v.reason = "fiber rank not constant";
      return v;
    }
  }
  v.yes = true;
  v.probabilistic = true;
  return v;
}

MainLemmaVerdict main_lemma_predicate(const DObject& e, std::uint64_t seed) {
  if (sheaf_cohomology_profile(e).nonvanishing().empty())
    throw MathError("main_lemma_predicate: zero object");
  MainLemmaVerdict out;
  out.rhom_in_le0 = sheaf_cohomology_profile(rhom(e, e)).in_D_le0();
  out.bundle = is_shifted_bundle(e, seed);
  out.report.note("RHom(E,E) in D<=0", "rhom", out.rhom_in_le0 ? "true" : "false");
  out.report.note("E is a shifted bundle", "bundle", out.bundle.yes ? "true" : out.bundle.reason);
  if (out.rhom_in_le0 != out.bundle.yes)
    out.report.fail("RHom(E,E) in D<=0 iff E is a shifted bundle", "equivalence");
  else if (out.bundle.probabilistic)
    out.report.mark_probabilistic();
  return out;
}

}  // namespace dbcoh
