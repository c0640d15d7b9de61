#include "dbcoh/dobject.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>

namespace dbcoh {

namespace {
const std::vector<int> kNoTerm;

int sign_of(int k) { return (k % 2 == 0) ? 1 : -1; }
}  // namespace

DObject::DObject(int m) : m_(m) {
  if (m < 1 || m + 1 > Monomial::kMaxVars) throw MathError("DObject: unsupported dimension m");
}

DObject DObject::line_bundle(int m, int d, int t) {
  DObject e(m);
  e.set_term(t, {d});
  return e;
}

const std::vector<int>& DObject::term(int t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? kNoTerm : it->second;
}

const PolyMatrix* DObject::diff_ptr(int t) const {
  auto it = diffs_.find(t);
  return it == diffs_.end() ? nullptr : &it->second;
}

PolyMatrix DObject::diff(int t) const {
  if (const auto* d = diff_ptr(t)) return *d;
  return PolyMatrix(term(t + 1), term(t));
}

void DObject::set_term(int t, std::vector<int> twists) {
  diffs_.erase(t);
  diffs_.erase(t - 1);
  if (twists.empty())
    terms_.erase(t);
  else
    terms_[t] = std::move(twists);
}

void DObject::set_diff(int t, PolyMatrix d) {
  if (d.col_twists() != term(t) || d.row_twists() != term(t + 1))
    throw MathError("DObject::set_diff: twists of d^" + std::to_string(t) +
                    " do not match the terms");
  if (d.is_zero())
    diffs_.erase(t);
  else
    diffs_[t] = std::move(d);
}

int DObject::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int DObject::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

int DObject::min_twist() const {
  int v = 0;
  bool first = true;
  for (const auto& [t, tw] : terms_)
    for (int a : tw) {
      v = first ? a : std::min(v, a);
      first = false;
    }
  return v;
}

int DObject::max_twist() const {
  int v = 0;
  bool first = true;
  for (const auto& [t, tw] : terms_)
    for (int a : tw) {
      v = first ? a : std::max(v, a);
      first = false;
    }
  return v;
}

std::size_t DObject::summands() const {
  std::size_t n = 0;
  for (const auto& [t, tw] : terms_) n += tw.size();
  return n;
}

PolyMatrix ChainMap::component(const DObject& source, const DObject& target, int t) const {
  auto it = components.find(t);
  if (it != components.end()) return it->second;
  return PolyMatrix(target.term(t + degree), source.term(t));
}

// ---------------------------------------------------------------------------

CheckReport validate(const DObject& e) {
  CheckReport rep;
  for (const auto& [t, tw] : e.terms())
    if (tw.empty()) rep.fail("terms are nonempty", "terms/" + std::to_string(t));
  for (const auto& [t, d] : e.diffs()) {
    if (d.col_twists() != e.term(t) || d.row_twists() != e.term(t + 1))
      rep.fail("differential twists match terms", "diffs/" + std::to_string(t));
  }
  if (!rep.passed()) return rep;
  for (const auto& [t, d] : e.diffs()) {
    const auto* next = e.diff_ptr(t + 1);
    if (next == nullptr) continue;
    const PolyMatrix sq = (*next) * d;
    if (!sq.is_zero()) {
      for (std::size_t r = 0; r < sq.rows(); ++r)
        if (!sq.row(r).empty()) {
          rep.fail("d o d = 0", "diffs/" + std::to_string(t),
                   "entry (" + std::to_string(r) + ", " + std::to_string(sq.row(r).front().first) +
                       ") of d^" + std::to_string(t + 1) + " d^" + std::to_string(t) + " = " +
                       sq.row(r).front().second.to_string(e.m() + 1));
          break;
        }
    }
  }
  return rep;
}

namespace {

PolyMatrix retwisted(const PolyMatrix& d, int k) {
  std::vector<int> rt = d.row_twists(), ct = d.col_twists();
  for (int& a : rt) a += k;
  for (int& a : ct) a += k;
  PolyMatrix out(std::move(rt), std::move(ct));
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (const auto& [c, p] : d.row(r)) out.set(r, c, p);
  return out;
}

void require_same_m(const DObject& a, const DObject& b, const char* what) {
  if (a.m() != b.m()) throw MathError(std::string(what) + ": objects live on different P^m");
}

}  // namespace

DObject shift(const DObject& e, int k) {
  DObject out(e.m());
  for (const auto& [t, tw] : e.terms()) out.set_term(t - k, tw);
  for (const auto& [t, d] : e.diffs()) out.set_diff(t - k, sign_of(k) > 0 ? d : -d);
  return out;
}

DObject twist(const DObject& e, int k) {
  DObject out(e.m());
  for (const auto& [t, tw] : e.terms()) {
    std::vector<int> v = tw;
    for (int& a : v) a += k;
    out.set_term(t, std::move(v));
  }
  for (const auto& [t, d] : e.diffs()) out.set_diff(t, retwisted(d, k));
  return out;
}

DObject dual(const DObject& e) {
  DObject out(e.m());
  for (const auto& [t, tw] : e.terms()) {
    std::vector<int> v = tw;
    for (int& a : v) a = -a;
    out.set_term(-t, std::move(v));
  }
  // d_dual^t is the transpose of d_E^{-t-1}.
  for (const auto& [t, d] : e.diffs()) out.set_diff(-t - 1, d.transpose());
  return out;
}

DObject direct_sum(const DObject& e, const DObject& f) {
  require_same_m(e, f, "direct_sum");
  DObject out(e.m());
  std::set<int> degs;
  for (const auto& [t, tw] : e.terms()) degs.insert(t);
  for (const auto& [t, tw] : f.terms()) degs.insert(t);
  for (int t : degs) {
    std::vector<int> v = e.term(t);
    v.insert(v.end(), f.term(t).begin(), f.term(t).end());
    out.set_term(t, std::move(v));
  }
  for (int t : degs) {
    if (out.term(t + 1).empty()) continue;
    PolyMatrix d(out.term(t + 1), out.term(t));
    const std::size_t er = e.term(t + 1).size(), ec = e.term(t).size();
    if (const auto* de = e.diff_ptr(t))
      for (std::size_t r = 0; r < de->rows(); ++r)
        for (const auto& [c, p] : de->row(r)) d.set(r, c, p);
    if (const auto* df = f.diff_ptr(t))
      for (std::size_t r = 0; r < df->rows(); ++r)
        for (const auto& [c, p] : df->row(r)) d.set(er + r, ec + c, p);
    out.set_diff(t, std::move(d));
  }
  return out;
}

DObject tensor(const DObject& e, const DObject& f) {
  require_same_m(e, f, "tensor");
  DObject out(e.m());
  if (e.is_zero() || f.is_zero()) return out;
  // Block layout of (E (x) F)^n: offset of block (p, n - p).
  std::map<int, std::map<int, std::size_t>> offset;
  for (int n = e.min_degree() + f.min_degree(); n <= e.max_degree() + f.max_degree(); ++n) {
    std::vector<int> v;
    for (const auto& [p, ep] : e.terms()) {
      const auto& fq = f.term(n - p);
      if (fq.empty()) continue;
      offset[n][p] = v.size();
      for (int a : ep)
        for (int b : fq) v.push_back(a + b);
    }
    if (!v.empty()) out.set_term(n, std::move(v));
  }
  for (const auto& [n, blocks] : offset) {
    if (out.term(n + 1).empty()) continue;
    PolyMatrix d(out.term(n + 1), out.term(n));
    const auto& next = offset[n + 1];
    for (const auto& [p, off] : blocks) {
      const int q = n - p;
      const std::size_t nf = f.term(q).size();
      // d_E (x) 1 into block (p+1, q)
      if (const auto* de = e.diff_ptr(p); de != nullptr && next.count(p + 1)) {
        const std::size_t toff = next.at(p + 1);
        for (std::size_t i2 = 0; i2 < de->rows(); ++i2)
          for (const auto& [i, poly] : de->row(i2))
            for (std::size_t j = 0; j < nf; ++j) d.set(toff + i2 * nf + j, off + i * nf + j, poly);
      }
      // (-1)^p 1 (x) d_F into block (p, q+1)
      if (const auto* df = f.diff_ptr(q); df != nullptr && next.count(p)) {
        const std::size_t toff = next.at(p);
        const std::size_t nf2 = f.term(q + 1).size();
        const std::size_t ne = e.term(p).size();
        for (std::size_t j2 = 0; j2 < df->rows(); ++j2)
          for (const auto& [j, poly] : df->row(j2)) {
            const Poly signed_poly = sign_of(p) > 0 ? poly : -poly;
            for (std::size_t i = 0; i < ne; ++i) d.set(toff + i * nf2 + j2, off + i * nf + j, signed_poly);
          }
      }
    }
    out.set_diff(n, std::move(d));
  }
  return out;
}

std::optional<int> chain_map_defect(const ChainMap& f, const DObject& e, const DObject& g) {
  if (f.degree != 0) throw MathError("chain_map_defect: expects a degree-0 map");
  std::set<int> degs;
  for (const auto& [t, tw] : e.terms()) degs.insert(t), degs.insert(t - 1);
  for (const auto& [t, tw] : g.terms()) degs.insert(t), degs.insert(t - 1);
  for (const auto& [t, c] : f.components) {
    if (c.col_twists() != e.term(t) || c.row_twists() != g.term(t)) return t;
  }
  for (int t : degs) {
    const PolyMatrix lhs = f.component(e, g, t + 1) * e.diff(t);
    const PolyMatrix rhs = g.diff(t) * f.component(e, g, t);
    if (!(lhs + (-rhs)).is_zero()) return t;
  }
  return std::nullopt;
}

DObject cone(const ChainMap& f, const DObject& e, const DObject& g) {
  require_same_m(e, g, "cone");
  if (auto bad = chain_map_defect(f, e, g))
    throw MathError("cone: not a chain map at degree " + std::to_string(*bad));
  DObject out(e.m());
  std::set<int> degs;
  for (const auto& [t, tw] : g.terms()) degs.insert(t);
  for (const auto& [t, tw] : e.terms()) degs.insert(t - 1);
  for (int t : degs) {
    std::vector<int> v = g.term(t);
    v.insert(v.end(), e.term(t + 1).begin(), e.term(t + 1).end());
    out.set_term(t, std::move(v));
  }
  for (int t : degs) {
    if (out.term(t + 1).empty()) continue;
    PolyMatrix d(out.term(t + 1), out.term(t));
    const std::size_t gr = g.term(t + 1).size(), gc = g.term(t).size();
    if (const auto* dg = g.diff_ptr(t))
      for (std::size_t r = 0; r < dg->rows(); ++r)
        for (const auto& [c, p] : dg->row(r)) d.set(r, c, p);
    const PolyMatrix fc = f.component(e, g, t + 1);
    for (std::size_t r = 0; r < fc.rows(); ++r)
      for (const auto& [c, p] : fc.row(r)) d.set(r, gc + c, p);
    if (const auto* de = e.diff_ptr(t + 1))
      for (std::size_t r = 0; r < de->rows(); ++r)
        for (const auto& [c, p] : de->row(r)) d.set(gr + r, gc + c, -p);
    out.set_diff(t, std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutable working form used by minimize and the Koszul splicing.

namespace {

struct WorkSparse {
  std::vector<std::map<std::size_t, Poly>> rows;  // target summand -> (source -> entry)
  std::vector<std::set<std::size_t>> cols;        // source summand -> targets hit
};

class WorkComplex {
 public:
  explicit WorkComplex(const DObject& e) : m_(e.m()) {
    for (const auto& [t, tw] : e.terms()) {
      twist_[t] = tw;
      alive_[t].assign(tw.size(), 1);
    }
    for (const auto& [t, d] : e.diffs()) {
      WorkSparse& w = diff(t);
      for (std::size_t r = 0; r < d.rows(); ++r)
        for (const auto& [c, p] : d.row(r)) {
          w.rows[r].emplace(c, p);
          w.cols[c].insert(r);
        }
    }
  }

  DObject to_object() const {
    DObject out(m_);
    std::map<int, std::vector<std::size_t>> index;
    for (const auto& [t, tw] : twist_) {
      std::vector<int> v;
      auto& idx = index[t];
      idx.assign(tw.size(), static_cast<std::size_t>(-1));
      for (std::size_t i = 0; i < tw.size(); ++i)
        if (alive_.at(t)[i]) {
          idx[i] = v.size();
          v.push_back(tw[i]);
        }
      if (!v.empty()) out.set_term(t, std::move(v));
    }
    for (const auto& [t, w] : diffs_) {
      if (out.term(t).empty() || out.term(t + 1).empty()) continue;
      PolyMatrix d(out.term(t + 1), out.term(t));
      const auto& ri = index.at(t + 1);
      const auto& ci = index.at(t);
      for (std::size_t r = 0; r < w.rows.size(); ++r) {
        if (w.rows[r].empty()) continue;
        if (ri[r] == static_cast<std::size_t>(-1)) throw MathError("minimize: dead row kept entries");
        for (const auto& [c, p] : w.rows[r]) {
          if (ci[c] == static_cast<std::size_t>(-1)) throw MathError("minimize: dead column kept entries");
          d.set(ri[r], ci[c], p);
        }
      }
      out.set_diff(t, std::move(d));
    }
    return out;
  }

  WorkSparse& diff(int t) {
    WorkSparse& w = diffs_[t];
    w.rows.resize(twist_[t + 1].size());
    w.cols.resize(twist_[t].size());
    alive_[t].resize(twist_[t].size(), 1);
    alive_[t + 1].resize(twist_[t + 1].size(), 1);
    return w;
  }

  std::size_t add_summand(int t, int tw) {
    auto& v = twist_[t];
    v.push_back(tw);
    alive_[t].push_back(1);
    if (auto it = diffs_.find(t); it != diffs_.end()) it->second.cols.resize(v.size());
    if (auto it = diffs_.find(t - 1); it != diffs_.end()) it->second.rows.resize(v.size());
    return v.size() - 1;
  }

  void add_to(int t, std::size_t r, std::size_t c, const Poly& p) {
    if (p.is_zero()) return;
    WorkSparse& w = diff(t);
    auto& row = w.rows[r];
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, p);
      w.cols[c].insert(r);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) {
      row.erase(it);
      w.cols[c].erase(r);
    }
  }

  void clear_row(int t, std::size_t r) {
    auto it = diffs_.find(t);
    if (it == diffs_.end() || r >= it->second.rows.size()) return;
    for (const auto& [c, p] : it->second.rows[r]) it->second.cols[c].erase(r);
    it->second.rows[r].clear();
  }

  void clear_col(int t, std::size_t c) {
    auto it = diffs_.find(t);
    if (it == diffs_.end() || c >= it->second.cols.size()) return;
    for (std::size_t r : it->second.cols[c]) it->second.rows[r].erase(c);
    it->second.cols[c].clear();
  }

  /// Cancels u = (t, c) against v = (t+1, r) through the invertible scalar
  /// entry d^t[r][c].
  void eliminate(int t, std::size_t r, std::size_t c) {
    WorkSparse& w = diff(t);
    const Rational inv = 1 / w.rows[r].at(c).scalar();
    std::vector<std::pair<std::size_t, Poly>> beta;
    for (const auto& [cc, p] : w.rows[r])
      if (cc != c) beta.emplace_back(cc, p);
    std::vector<std::pair<std::size_t, Poly>> gamma;
    for (std::size_t rr : w.cols[c])
      if (rr != r) gamma.emplace_back(rr, w.rows[rr].at(c) * Rational(-inv));
    for (const auto& [rr, g] : gamma)
      for (const auto& [cc, f] : beta) add_to(t, rr, cc, g * f);
    clear_row(t, r);
    clear_col(t, c);
    clear_row(t - 1, c);
    clear_col(t + 1, r);
    alive_[t][c] = 0;
    alive_[t + 1][r] = 0;
  }

  bool eliminate_scalars() {
    bool any = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [t, w] : diffs_) {
        for (std::size_t r = 0; r < w.rows.size(); ++r) {
          std::size_t best = static_cast<std::size_t>(-1);
          std::size_t best_cost = 0;
          for (const auto& [c, p] : w.rows[r]) {
            if (p.degree() != 0 || p.is_zero()) continue;
            const std::size_t cost = w.cols[c].size();
            if (best == static_cast<std::size_t>(-1) || cost < best_cost) {
              best = c;
              best_cost = cost;
            }
          }
          if (best != static_cast<std::size_t>(-1)) {
            eliminate(t, r, best);
            changed = any = true;
          }
        }
      }
    }
    return any;
  }

  std::optional<int> min_alive_twist() const {
    std::optional<int> v;
    for (const auto& [t, tw] : twist_)
      for (std::size_t i = 0; i < tw.size(); ++i)
        if (alive_.at(t)[i] && (!v || tw[i] < *v)) v = tw[i];
    return v;
  }

  std::vector<std::pair<int, std::size_t>> alive_with_twist(int a) const {
    std::vector<std::pair<int, std::size_t>> out;
    for (const auto& [t, tw] : twist_)
      for (std::size_t i = 0; i < tw.size(); ++i)
        if (alive_.at(t)[i] && tw[i] == a) out.emplace_back(t, i);
    return out;
  }

  /// Replaces a lowest-twist summand u = O(t0) in degree p (no incoming
  /// maps, outgoing map delta) by K = [Lambda^1 (x) O(t0+1) -> ... ->
  /// Lambda^{m+1} (x) O(t0+m+1)], with connecting maps psi^q : K^q -> G'
  /// solving  d_G' psi^q = psi^{q+1} d_K,  psi^0 iota = delta.  Composition
  /// with d_K is contraction with the Euler field on forms, so the de Rham
  /// differential divided by the weight gives psi^{q+1} = d(d_G' psi^q) / w.
  void splice_lowest(int p, std::size_t u, int t0) {
    const int n = m_ + 1;
    std::vector<std::pair<std::size_t, Poly>> delta;
    {
      WorkSparse& w = diff(p);
      for (std::size_t r : w.cols[u]) delta.emplace_back(r, w.rows[r].at(u));
    }
    clear_col(p, u);
    alive_[p][u] = 0;

    std::vector<std::map<unsigned, std::size_t>> kidx(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      for (unsigned mask = 1; mask < (1u << n); ++mask)
        if (std::popcount(mask) == q + 1) kidx[static_cast<std::size_t>(q)][mask] = add_summand(p + q, t0 + q + 1);

    for (int q = 0; q + 1 < n; ++q)
      for (const auto& [J, cj] : kidx[static_cast<std::size_t>(q)])
        for (int j = 0; j < n; ++j) {
          if (J & (1u << j)) continue;
          const int before = std::popcount(J & ((1u << j) - 1));
          const Rational s = (before % 2 == 0) ? -1 : 1;  // -d_K
          add_to(p + q, kidx[static_cast<std::size_t>(q) + 1].at(J | (1u << j)), cj, Poly::variable(j) * s);
        }

    using Form = std::map<unsigned, std::map<std::size_t, Poly>>;  // mask -> target -> entry
    Form psi;
    for (const auto& [r, f] : delta) {
      const Rational inv_w = ratio(1, f.degree());
      for (int j = 0; j < n; ++j) {
        Poly g = f.derivative(j) * inv_w;
        if (!g.is_zero()) psi[1u << j][r] = std::move(g);
      }
    }
    for (const auto& [J, targets] : psi)
      for (const auto& [r, g] : targets) add_to(p, r, kidx[0].at(J), g);

    for (int q = 0; q < n; ++q) {
      const int level = p + q + 1;  // where psi^q lands
      Form alpha;
      if (diffs_.count(level)) {
        WorkSparse& w = diff(level);
        for (const auto& [J, targets] : psi)
          for (const auto& [r, g] : targets)
            for (std::size_t s : w.cols[r]) alpha[J][s] += w.rows[s].at(r) * g;
      }
      for (auto it = alpha.begin(); it != alpha.end();) {
        std::erase_if(it->second, [](const auto& e) { return e.second.is_zero(); });
        it = it->second.empty() ? alpha.erase(it) : std::next(it);
      }
      if (q + 1 == n) {
        if (!alpha.empty()) throw MathError("splice: Koszul lift left a nonzero obstruction");
        break;
      }
      std::set<std::size_t> targets;
      for (const auto& [J, row] : alpha)
        for (const auto& [s, g] : row) targets.insert(s);
      Form next;
      for (std::size_t s : targets) {
        const Rational inv_w = ratio(1, twist_.at(level + 1)[s] - t0);
        for (const auto& [I, ci] : kidx[static_cast<std::size_t>(q) + 1]) {
          Poly acc;
          int l = 0;
          for (int j = 0; j < n; ++j) {
            if (!(I & (1u << j))) continue;
            auto a = alpha.find(I & ~(1u << j));
            if (a != alpha.end()) {
              auto e = a->second.find(s);
              if (e != a->second.end()) {
                Poly term = e->second.derivative(j);
                if (l % 2 == 0)
                  acc += term;
                else
                  acc -= term;
              }
            }
            ++l;
          }
          acc *= inv_w;
          if (!acc.is_zero()) next[I][s] = std::move(acc);
        }
      }
      for (const auto& [I, row] : next)
        for (const auto& [s, g] : row) add_to(level, s, kidx[static_cast<std::size_t>(q) + 1].at(I), g);
      psi = std::move(next);
    }
  }

 private:
  int m_;
  std::map<int, std::vector<int>> twist_;
  std::map<int, std::vector<char>> alive_;
  std::map<int, WorkSparse> diffs_;
};

}  // namespace

DObject minimize(const DObject& e) {
  WorkComplex w(e);
  if (!w.eliminate_scalars()) return e;
  return w.to_object();
}

DObject raise_min_to(const DObject& e, int bound) {
  WorkComplex w(e);
  w.eliminate_scalars();
  while (true) {
    const auto t0 = w.min_alive_twist();
    if (!t0 || *t0 >= bound) break;
    for (const auto& [p, u] : w.alive_with_twist(*t0)) w.splice_lowest(p, u, *t0);
    w.eliminate_scalars();
  }
  return w.to_object();
}

DObject lower_max_to(const DObject& e, int bound) { return dual(raise_min_to(dual(e), -bound)); }

DObject window_normalize(const DObject& e, WindowMode mode, int bound) {
  return mode == WindowMode::raise_min ? raise_min_to(e, bound) : lower_max_to(e, bound);
}

DObject compact(const DObject& e) {
  const DObject min = minimize(e);
  if (min.is_zero()) return min;
  DObject best = lower_max_to(min, min.min_twist() + e.m());
  // Neighbouring windows can be much smaller (O(-1) needs seven summands
  // in [0, m] on P^2); walk while the summand count drops.
  for (int dir : {-1, 1}) {
    while (true) {
      DObject cand = window_model(best, best.min_twist() + dir);
      if (cand.summands() >= best.summands()) break;
      best = std::move(cand);
    }
  }
  return best;
}

DObject window_model(const DObject& e, int b) { return lower_max_to(raise_min_to(e, b), b + e.m()); }

DObject serre(const DObject& e) { return shift(twist(e, -e.m() - 1), e.m()); }

DObject koszul_unit(int m, KoszulDirection dir) {
  if (dir == KoszulDirection::lower) return dual(koszul_unit(m, KoszulDirection::raise));
  const int n = m + 1;
  DObject out(m);
  std::vector<std::vector<unsigned>> masks(static_cast<std::size_t>(n));
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    masks[static_cast<std::size_t>(std::popcount(mask) - 1)].push_back(mask);
  for (int q = 0; q < n; ++q)
    out.set_term(q, std::vector<int>(masks[static_cast<std::size_t>(q)].size(), q + 1));
  for (int q = 0; q + 1 < n; ++q) {
    PolyMatrix d(out.term(q + 1), out.term(q));
    const auto& src = masks[static_cast<std::size_t>(q)];
    const auto& dst = masks[static_cast<std::size_t>(q) + 1];
    for (std::size_t c = 0; c < src.size(); ++c)
      for (int j = 0; j < n; ++j) {
        if (src[c] & (1u << j)) continue;
        const auto r = static_cast<std::size_t>(
            std::find(dst.begin(), dst.end(), src[c] | (1u << j)) - dst.begin());
        const int before = std::popcount(src[c] & ((1u << j) - 1));
        d.set(r, c, Poly::variable(j) * Rational(before % 2 == 0 ? 1 : -1));
      }
    out.set_diff(q, std::move(d));
  }
  return out;
}

DObject koszul_complex(int m, const std::vector<Poly>& forms) {
  const int k = static_cast<int>(forms.size());
  if (k > 16) throw MathError("koszul_complex: too many forms");
  DObject out(m);
  std::vector<std::vector<unsigned>> masks(static_cast<std::size_t>(k) + 1);
  for (unsigned mask = 0; mask < (1u << k); ++mask) masks[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
  auto weight = [&](unsigned mask) {
    int w = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) w += forms[static_cast<std::size_t>(i)].degree();
    return w;
  };
  for (int p = 0; p <= k; ++p) {
    std::vector<int> tw;
    for (unsigned mask : masks[static_cast<std::size_t>(p)]) tw.push_back(-weight(mask));
    out.set_term(-p, std::move(tw));
  }
  for (int p = k; p >= 1; --p) {
    PolyMatrix d(out.term(-p + 1), out.term(-p));
    const auto& src = masks[static_cast<std::size_t>(p)];
    const auto& dst = masks[static_cast<std::size_t>(p) - 1];
    for (std::size_t c = 0; c < src.size(); ++c) {
      int l = 0;
      for (int i = 0; i < k; ++i) {
        if (!(src[c] & (1u << i))) continue;
        const auto r = static_cast<std::size_t>(
            std::find(dst.begin(), dst.end(), src[c] & ~(1u << i)) - dst.begin());
        d.set(r, c, forms[static_cast<std::size_t>(i)] * Rational(l % 2 == 0 ? 1 : -1));
        ++l;
      }
    }
    out.set_diff(-p, std::move(d));
  }
  return out;
}

DObject point_complex(const RPoint& p) {
  const int m = p.ambient_dim();
  // Linear forms vanishing at p: kernel of the 1 x (m+1) row p^T.
  const auto rk = rank_kernel(QMatrix::from_rows({p.coords()}));
  std::vector<Poly> forms;
  for (std::size_t k = 0; k < rk.kernel_basis.cols(); ++k) {
    std::vector<Poly::Term> terms;
    for (int i = 0; i <= m; ++i) {
      const Rational c = rk.kernel_basis.at(static_cast<std::size_t>(i), k);
      if (sgn(c) != 0) terms.emplace_back(Monomial::variable(i), c);
    }
    forms.emplace_back(1, std::move(terms));
  }
  return koszul_complex(m, forms);
}

std::map<int, std::vector<int>> twist_profile(const DObject& e) {
  std::map<int, std::vector<int>> out;
  for (const auto& [t, tw] : e.terms()) {
    auto v = tw;
    std::sort(v.begin(), v.end());
    out[t] = std::move(v);
  }
  return out;
}

}  // namespace dbcoh
