#include "dbcoh/mutate.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace dbcoh {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

HomComplex::HomComplex(DObject source, DObject target)
    : source_(std::move(source)), target_(std::move(target)), m_(source_.m()) {
  if (source_.m() != target_.m()) throw MathError("HomComplex: objects live on different P^m");
  if (source_.is_zero() || target_.is_zero()) return;
  if (target_.min_twist() - source_.max_twist() < -m_)
    throw MathError("HomComplex: twist gap below -m; lower the source first");
  lo_ = target_.min_degree() - source_.max_degree();
  hi_ = target_.max_degree() - source_.min_degree();
  for (int k = lo_ - 1; k <= hi_ + 1; ++k) {
    Layout& l = layouts_[k];
    for (const auto& [t, src] : source_.terms()) {
      const auto& tgt = target_.term(t + k);
      if (tgt.empty()) continue;
      auto& off = l.offset[t];
      off.assign(tgt.size(), std::vector<std::size_t>(src.size(), npos));
      for (std::size_t r = 0; r < tgt.size(); ++r)
        for (std::size_t c = 0; c < src.size(); ++c) {
          const std::size_t n = sym_dim(m_, tgt[r] - src[c]);
          if (n == 0) continue;
          off[r][c] = l.dim;
          l.dim += n;
        }
    }
  }
}

const HomComplex::Layout& HomComplex::layout(int k) const {
  static const Layout empty;
  auto it = layouts_.find(k);
  return it == layouts_.end() ? empty : it->second;
}

std::size_t HomComplex::dim(int k) const { return layout(k).dim; }

QMatrix HomComplex::differential(int k) const {
  const Layout& from = layout(k);
  const Layout& to = layout(k + 1);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> trip;
  const Rational phi_sign = (k % 2 == 0) ? -1 : 1;  // -(-1)^k
  for (const auto& [t, off] : from.offset) {
    const auto& src = source_.term(t);
    const auto& tgt = target_.term(t + k);
    // d_F phi lands in Hom(E^t, F^{t+k+1}).
    const PolyMatrix* df = target_.diff_ptr(t + k);
    const PolyMatrix dft = df ? df->transpose() : PolyMatrix();
    const auto to_t = to.offset.find(t);
    // phi d_E lands in Hom(E^{t-1}, F^{t+k}).
    const PolyMatrix* de = source_.diff_ptr(t - 1);
    const auto to_tm1 = to.offset.find(t - 1);
    for (std::size_t r = 0; r < tgt.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c) {
        const std::size_t o = off[r][c];
        if (o == npos) continue;
        const auto basis = monomial_basis(m_, tgt[r] - src[c]);
        if (df && to_t != to.offset.end()) {
          for (const auto& [r2, g] : dft.row(r)) {
            const std::size_t o2 = to_t->second[r2][c];
            if (o2 == npos) throw MathError("HomComplex: inconsistent layout");
            for (std::size_t j = 0; j < basis.size(); ++j)
              for (const auto& [mono, coef] : g.terms())
                trip.emplace_back(o2 + monomial_index(m_, mono * basis[j]), o + j, coef);
          }
        }
        if (de && to_tm1 != to.offset.end()) {
          for (const auto& [c0, h] : de->row(c)) {
            const std::size_t o2 = to_tm1->second[r][c0];
            if (o2 == npos) throw MathError("HomComplex: inconsistent layout");
            for (std::size_t j = 0; j < basis.size(); ++j)
              for (const auto& [mono, coef] : h.terms())
                trip.emplace_back(o2 + monomial_index(m_, mono * basis[j]), o + j, phi_sign * coef);
          }
        }
      }
  }
  return QMatrix::from_triplets(to.dim, from.dim, std::move(trip));
}

ChainMap HomComplex::to_chain_map(int k, const std::vector<Rational>& coords) const {
  const Layout& l = layout(k);
  if (coords.size() != l.dim) throw MathError("HomComplex::to_chain_map: wrong coordinate count");
  ChainMap f;
  f.degree = k;
  for (const auto& [t, off] : l.offset) {
    const auto& src = source_.term(t);
    const auto& tgt = target_.term(t + k);
    PolyMatrix comp(tgt, src);
    for (std::size_t r = 0; r < tgt.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c) {
        const std::size_t o = off[r][c];
        if (o == npos) continue;
        const int deg = tgt[r] - src[c];
        const auto basis = monomial_basis(m_, deg);
        std::vector<Poly::Term> terms;
        for (std::size_t j = 0; j < basis.size(); ++j)
          if (sgn(coords[o + j]) != 0) terms.emplace_back(basis[j], coords[o + j]);
        if (!terms.empty()) comp.set(r, c, Poly(deg, std::move(terms)));
      }
    if (!comp.is_zero()) f.components.emplace(t, std::move(comp));
  }
  return f;
}

HomTable HomComplex::dims() const {
  std::map<int, std::size_t> out;
  if (hi_ < lo_) return {};
  std::map<int, std::size_t> ranks;
  for (int k = lo_ - 1; k <= hi_; ++k) ranks[k] = (dim(k) == 0 || dim(k + 1) == 0) ? 0 : rank(differential(k));
  for (int k = lo_; k <= hi_; ++k) out[k] = dim(k) - ranks[k] - ranks[k - 1];
  return make_table(out);
}

// ---------------------------------------------------------------------------

DObject hom_source_model(const DObject& e, const DObject& f) {
  if (e.is_zero() || f.is_zero()) return e;
  if (e.max_twist() <= f.min_twist() + e.m()) return e;
  return lower_max_to(e, f.min_twist() + e.m());
}

namespace {

// Cocycle representatives of Hom^s together with the complex they live in.
CohomologyPiece hom_piece(const HomComplex& h, int s) {
  const QMatrix din = h.differential(s - 1);
  const QMatrix dout = h.differential(s);
  return middle_cohomology(&din, &dout, h.dim(s));
}

std::vector<Rational> column_of(const QMatrix& m, std::size_t c) { return m.column(c); }

}  // namespace

HomBasis hom_chain_basis(const DObject& e, const DObject& f, int s) {
  HomBasis b;
  b.degree = s;
  b.source = hom_source_model(e, f);
  const HomComplex h(b.source, f);
  if (h.dim(s) == 0) return b;
  const auto piece = hom_piece(h, s);
  for (std::size_t i = 0; i < piece.dim; ++i) b.maps.push_back(h.to_chain_map(s, column_of(piece.representatives, i)));
  return b;
}

HomTable hom_chain_dims(const DObject& e, const DObject& f) {
  if (e.m() != f.m()) throw MathError("hom_chain_dims: objects live on different P^m");
  return HomComplex(hom_source_model(e, f), f).dims();
}

const char* to_string(IsoResult::Kind k) {
  switch (k) {
    case IsoResult::Kind::isomorphic:
      return "isomorphic";
    case IsoResult::Kind::not_isomorphic:
      return "not_isomorphic";
    case IsoResult::Kind::probably_not_isomorphic:
      return "probably_not_isomorphic";
  }
  return "?";
}

IsoResult iso_test(const DObject& e, const DObject& f, int trials, std::uint64_t seed) {
  if (e.m() != f.m()) throw MathError("iso_test: objects live on different P^m");
  IsoResult res;
  const DObject ce = compact(e), cf = compact(f);
  if (ce.is_zero() || cf.is_zero()) {
    res.kind = (ce.is_zero() && cf.is_zero()) ? IsoResult::Kind::isomorphic : IsoResult::Kind::not_isomorphic;
    res.reason = res.accepted() ? "both zero" : "exactly one object is zero";
    return res;
  }
  const int b = std::min(ce.min_twist(), cf.min_twist());
  const DObject we = window_model(ce, b), wf = window_model(cf, b);
  if (twist_profile(we) != twist_profile(wf)) {
    res.kind = IsoResult::Kind::not_isomorphic;
    res.reason = "minimal models in the window [" + std::to_string(b) + ", " + std::to_string(b + e.m()) +
                 "] have different terms";
    return res;
  }
  const HomComplex h(we, wf);
  const auto piece = hom_piece(h, 0);
  if (piece.dim == 0) {
    res.kind = IsoResult::Kind::not_isomorphic;
    res.reason = "Hom^0 vanishes";
    return res;
  }
  const QMatrix reps = piece.representatives.transpose();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < trials; ++trial) {
    res.trials_used = trial + 1;
    std::vector<Rational> v(h.dim(0));
    bool nonzero = false;
    for (std::size_t i = 0; i < piece.dim; ++i) {
      // The first trial of a one-dimensional Hom uses the generator itself.
      const int c = (piece.dim == 1 && trial == 0) ? 1 : coef(rng);
      if (c == 0) continue;
      nonzero = true;
      for (const auto& [r, x] : reps.row(i)) v[r] += c * x;
    }
    if (!nonzero) continue;
    const ChainMap phi = h.to_chain_map(0, v);
    if (minimize(cone(phi, we, wf)).is_zero()) {
      res.kind = IsoResult::Kind::isomorphic;
      res.reason = "cone of a sampled map is contractible";
      return res;
    }
  }
  res.kind = IsoResult::Kind::probably_not_isomorphic;
  res.reason = "no sampled map was an isomorphism";
  return res;
}

// ---------------------------------------------------------------------------


namespace {

// Chain-level basis of Hom^*(source, target), one entry per basis map.
struct GradedBasis {
  std::vector<int> degrees;
  std::vector<ChainMap> maps;  ///< degree-k maps source -> target[k]
};

GradedBasis graded_basis(const HomComplex& h) {
  GradedBasis g;
  for (int s = h.lo(); s <= h.hi(); ++s) {
    if (h.dim(s) == 0) continue;
    const auto piece = hom_piece(h, s);
    for (std::size_t i = 0; i < piece.dim; ++i) {
      g.degrees.push_back(s);
      g.maps.push_back(h.to_chain_map(s, column_of(piece.representatives, i)));
    }
  }
  return g;
}

}  // namespace

DObject left_mutation(const DObject& e1, const DObject& e2) {
  if (e1.m() != e2.m()) throw MathError("left_mutation: objects live on different P^m");
  const DObject src1 = hom_source_model(e1, e2);
  const HomComplex h(src1, e2);
  const GradedBasis basis = graded_basis(h);
  if (basis.maps.empty()) return compact(shift(e2, -1));
  // ev : (+)_i E1[-s_i] -> E2, the block of map i at degree u has the
  // columns of E1^{u - s_i}.
  DObject source(e1.m());
  for (int s : basis.degrees) source = direct_sum(source, shift(src1, -s));
  ChainMap ev;
  for (const auto& [u, tw] : source.terms()) {
    if (e2.term(u).empty()) continue;
    PolyMatrix comp(e2.term(u), tw);
    std::size_t col = 0;
    for (std::size_t i = 0; i < basis.maps.size(); ++i) {
      const int t = u - basis.degrees[i];
      const auto it = basis.maps[i].components.find(t);
      if (it != basis.maps[i].components.end())
        for (std::size_t r = 0; r < it->second.rows(); ++r)
          for (const auto& [c, p] : it->second.row(r)) comp.set(r, col + c, p);
      col += src1.term(t).size();
    }
    ev.components.emplace(u, std::move(comp));
  }
  return compact(shift(cone(ev, source, e2), -1));
}

DObject right_mutation(const DObject& e1, const DObject& e2) {
  if (e1.m() != e2.m()) throw MathError("right_mutation: objects live on different P^m");
  const DObject src1 = hom_source_model(e1, e2);
  const HomComplex h(src1, e2);
  const GradedBasis basis = graded_basis(h);
  if (basis.maps.empty()) return compact(shift(e1, 1));
  // coev : E1 -> (+)_i E2[s_i], block i at degree t has the rows of E2^{t + s_i}.
  DObject target(e1.m());
  for (int s : basis.degrees) target = direct_sum(target, shift(e2, s));
  ChainMap coev;
  for (const auto& [t, tw] : src1.terms()) {
    if (target.term(t).empty()) continue;
    PolyMatrix comp(target.term(t), tw);
    std::size_t row = 0;
    for (std::size_t i = 0; i < basis.maps.size(); ++i) {
      const auto it = basis.maps[i].components.find(t);
      if (it != basis.maps[i].components.end())
        for (std::size_t r = 0; r < it->second.rows(); ++r)
          for (const auto& [c, p] : it->second.row(r)) comp.set(row + r, c, p);
      row += e2.term(t + basis.degrees[i]).size();
    }
    coev.components.emplace(t, std::move(comp));
  }
  return compact(cone(coev, src1, target));
}

// ---------------------------------------------------------------------------

Collection beilinson(int m) {
  Collection c;
  c.m = m;
  for (int i = 0; i <= m; ++i) c.objects.push_back(DObject::line_bundle(m, i));
  return c;
}

namespace {

std::string pair_location(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string table_witness(const HomTable& t) {
  std::string w;
  for (const auto& [s, d] : t.entries) w += (w.empty() ? "" : " ") + ("s=" + std::to_string(s) + ":" + std::to_string(d));
  return w.empty() ? "0" : w;
}

}  // namespace

CollectionVerdict check_collection(const Collection& c) {
  CollectionVerdict v;
  if (c.objects.empty()) {
    v.report.fail("collection is nonempty", "objects");
    return v;
  }
  for (const auto& e : c.objects)
    if (e.m() != c.m) throw MathError("check_collection: objects live on different P^m");
  const std::size_t n = c.size();
  std::vector<DObject> small;
  for (const auto& e : c.objects) small.push_back(compact(e));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v.homs[{i, j}] = hom_chain_dims(small[i], small[j]);

  v.objects_exceptional = true;
  for (std::size_t i = 0; i < n; ++i) {
    const HomTable& t = v.homs[{i, i}];
    if (t.entries != std::map<int, std::size_t>{{0, 1}}) {
      v.objects_exceptional = false;
      v.report.fail("object is exceptional", pair_location(i, i), table_witness(t));
    }
  }
  v.exceptional = v.objects_exceptional;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const HomTable& t = v.homs[{i, j}];
      if (!t.is_zero()) {
        v.exceptional = false;
        v.report.fail("Hom^*(E_i, E_j) = 0 for i > j", pair_location(i, j), table_witness(t));
      }
    }
  v.strict = v.exceptional;
  if (v.exceptional)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const HomTable& t = v.homs[{i, j}];
        for (const auto& [s, d] : t.entries)
          if (s != 0) {
            v.strict = false;
            v.report.note("not strict: Hom^s(E_i, E_j) != 0 for s != 0", pair_location(i, j),
                          "s=" + std::to_string(s) + ":" + std::to_string(d));
          }
      }
  std::vector<KClass> classes;
  for (const auto& e : c.objects) classes.push_back(class_of(e));
  v.k0_basis = is_k0_basis(classes);
  if (!v.k0_basis) v.report.note("K_0 classes form a basis (fullness proxy)", "classes", "no");
  return v;
}

Collection apply_braid(const Collection& c, const BraidWord& w, bool recheck) {
  if (!check_collection(c).exceptional) throw MathError("apply_braid: input collection is not exceptional");
  Collection cur = c;
  const int n = static_cast<int>(c.size());
  for (std::size_t li = 0; li < w.letters.size(); ++li) {
    const BraidLetter& l = w.letters[li];
    const std::string where = "letter " + std::to_string(li);
    if (l.kind == BraidLetter::Kind::shift) {
      if (l.index < 1 || l.index > n) throw MathError("apply_braid: " + where + " position out of range");
      auto& e = cur.objects[static_cast<std::size_t>(l.index - 1)];
      e = shift(e, l.value);
      continue;
    }
    if (l.index < 1 || l.index >= n) throw MathError("apply_braid: " + where + " position out of range");
    if (l.value != 1 && l.value != -1) throw MathError("apply_braid: " + where + " exponent must be +1 or -1");
    auto& a = cur.objects[static_cast<std::size_t>(l.index - 1)];
    auto& b = cur.objects[static_cast<std::size_t>(l.index)];
    if (l.value == 1) {
      DObject left = left_mutation(a, b);
      b = std::move(a);
      a = std::move(left);
    } else {
      DObject right = right_mutation(a, b);
      a = std::move(b);
      b = std::move(right);
    }
    if (recheck && !check_collection(cur).exceptional)
      throw MathError("apply_braid: collection stopped being exceptional after " + where);
  }
  return cur;
}

BraidWord random_braid_word(std::size_t n, std::size_t length, std::uint64_t seed) {
  BraidWord w;
  if (n < 2) return w;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pos(1, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (std::size_t i = 0; i < length; ++i) {
    BraidLetter l;
    l.index = pos(rng);
    l.value = sign(rng) ? 1 : -1;
    w.letters.push_back(l);
  }
  return w;
}

// ---------------------------------------------------------------------------

const DObject& Helix::at(int i) const {
  auto it = objects.find(i);
  if (it == objects.end()) throw MathError("Helix: index " + std::to_string(i) + " not materialized");
  return it->second;
}

Helix helix_extend(const Collection& c, int lo, int hi) {
  if (!check_collection(c).exceptional) throw MathError("helix_extend: base collection is not exceptional");
  Helix h;
  h.m = c.m;
  h.n = c.size();
  const int n = static_cast<int>(h.n);
  for (int i = 1; i <= n; ++i) h.objects[i] = c.objects[static_cast<std::size_t>(i - 1)];
  for (int i = n + 1; i <= hi; ++i) {
    DObject x = h.objects.at(i - n);
    for (int j = i - n + 1; j <= i - 1; ++j) x = right_mutation(x, h.objects.at(j));
    h.objects[i] = std::move(x);
  }
  for (int i = 0; i >= lo; --i) {
    DObject x = h.objects.at(i + n);
    for (int j = i + n - 1; j >= i + 1; --j) x = left_mutation(h.objects.at(j), x);
    h.objects[i] = std::move(x);
  }
  return h;
}

CheckReport helix_serre_check(const Helix& h, int trials, std::uint64_t seed) {
  CheckReport rep;
  const int n = static_cast<int>(h.n);
  for (const auto& [i, e] : h.objects) {
    if (!h.objects.count(i - n)) continue;
    const DObject expected = shift(serre(e), -n + 1);
    const IsoResult r = iso_test(h.objects.at(i - n), expected, trials, seed + static_cast<std::uint64_t>(i - h.lo()));
    if (!r.accepted())
      rep.fail("E_{i-n} ~ serre(E_i)[-n+1]", "i=" + std::to_string(i),
               std::string(to_string(r.kind)) + ": " + r.reason);
  }
  return rep;
}

CheckReport proposition_sweep(const Helix& h, int lo, int hi) {
  CheckReport rep;
  Collection base;
  base.m = h.m;
  for (int i = 1; i <= static_cast<int>(h.n); ++i) base.objects.push_back(h.at(i));
  if (!check_collection(base).strict) {
    rep.fail("base collection is strictly exceptional", "base");
    return rep;
  }
  const int n = static_cast<int>(h.n);
  std::map<std::pair<int, int>, HomTable> homs;
  std::map<int, DObject> small;
  for (const auto& [i, e] : h.objects) small.emplace(i, compact(e));
  auto hom = [&](int i, int j) -> const HomTable& {
    auto it = homs.find({i, j});
    if (it == homs.end()) it = homs.emplace(std::pair{i, j}, hom_chain_dims(small.at(i), small.at(j))).first;
    return it->second;
  };
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) {
      const HomTable& t = hom(i, j);
      const std::string loc = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      for (const auto& [s, d] : t.entries) {
        const std::string w = "s=" + std::to_string(s) + ":" + std::to_string(d);
        if (i <= j && s > 0) rep.fail("Hom^s(E_i, E_j) = 0 for s > 0, i <= j", loc, w);
        if (i > j && s < n - 1) rep.fail("Hom^s(E_i, E_j) = 0 for s < n-1, i > j", loc, w);
        if (i == j && s < n - 1) rep.note("diagonal i = j: nonzero Hom^s with s < n-1", loc, w);
      }
      if (small.count(j + n)) {
        const HomTable& dualt = hom(j + n, i);
        for (int s = -2 * n; s <= 2 * n; ++s)
          if (t.at(s) != dualt.at(n - 1 - s))
            rep.fail("dim Hom^s(E_i, E_j) = dim Hom^{n-1-s}(E_{j+n}, E_i)", loc, "s=" + std::to_string(s));
      }
    }
  return rep;
}

TheoremVerdict verify_theorem(const Collection& c, std::uint64_t seed) {
  TheoremVerdict v;
  const CollectionVerdict cv = check_collection(c);
  v.hypothesis = cv.strict && cv.k0_basis;
  if (!v.hypothesis) {
    v.report.absorb(cv.report, "hypothesis");
    v.report.fail("hypothesis: strictly exceptional with a K_0 basis", "hypothesis",
                  cv.strict ? "classes do not form a basis" : "not strictly exceptional");
    return v;
  }
  v.conclusion = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    v.bundles.push_back(is_shifted_bundle(c.objects[i], seed + i));
    const BundleVerdict& b = v.bundles.back();
    const std::string loc = "E_" + std::to_string(i + 1);
    if (!b.yes) {
      v.conclusion = false;
      v.report.fail("E_i is a shifted locally free sheaf", loc, b.reason);
    } else {
      v.report.note("shift and rank", loc, "shift=" + std::to_string(b.shift) + " rank=" + std::to_string(b.rank));
      if (b.shift != v.bundles.front().shift) {
        v.conclusion = false;
        v.report.fail("all objects share one shift", loc, "shift=" + std::to_string(b.shift));
      }
    }
  }
  if (v.conclusion) v.report.mark_probabilistic();
  return v;
}

CorollaryVerdict corollary_detect(const DObject& e, int n_max, std::uint64_t seed) {
  CorollaryVerdict v;
  const DObject small = compact(e);
  const int m = e.m();
  const int spread = small.is_zero() ? 0 : small.max_twist() - small.min_twist();
  v.n_eff = std::max(n_max, spread + m + 1);
  v.self_homs = small.is_zero() ? HomTable{} : hom_chain_dims(small, twist(small, v.n_eff * (m + 1)));
  v.shifted_bundle = v.self_homs.at(0) > 0;
  for (const auto& [s, d] : v.self_homs.entries)
    if (s != 0) v.shifted_bundle = false;
  v.agrees = v.shifted_bundle == is_shifted_bundle(e, seed).yes;
  return v;
}

HeartVerdict heart_detect(const DObject& u, const Collection& probes, int n_max) {
  HeartVerdict v;
  const DObject small = compact(u);
  const int m = u.m();
  const int spread = small.is_zero() ? 0 : small.max_twist() - small.min_twist();
  const int n = std::max(n_max, spread + m + 1);
  v.in_D_ge0 = true;
  if (!small.is_zero()) {
    const DObject target = twist(small, n * (m + 1));
    for (const auto& p : probes.objects)
      for (const auto& [s, d] : hom_chain_dims(p, target).entries)
        if (s < 0) v.in_D_ge0 = false;
  }
  v.matches_profile = v.in_D_ge0 == sheaf_cohomology_profile(u).in_D_ge0();
  return v;
}

}  // namespace dbcoh
