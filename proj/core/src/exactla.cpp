#include "dbcoh/exactla.hpp"

#include <algorithm>
#include <numeric>

namespace dbcoh {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MathError("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(rows[r][c]) != 0) m.data_[r].emplace_back(c, rows[r][c]);
  }
  return m;
}

QMatrix QMatrix::from_triplets(std::size_t rows, std::size_t cols,
                               std::vector<std::tuple<std::size_t, std::size_t, Rational>> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  QMatrix m(rows, cols);
  for (auto& [r, c, v] : t) {
    if (r >= rows || c >= cols) throw MathError("from_triplets: index out of range");
    auto& row = m.data_[r];
    if (!row.empty() && row.back().first == c)
      row.back().second += v;
    else
      row.emplace_back(c, std::move(v));
  }
  for (auto& row : m.data_)
    std::erase_if(row, [](const auto& e) { return sgn(e.second) == 0; });
  return m;
}

Rational QMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw MathError("QMatrix::at out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Rational(0);
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw MathError("QMatrix::set out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  const bool present = it != row.end() && it->first == c;
  if (sgn(v) == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    row.insert(it, {c, v});
  }
}

std::vector<Rational> QMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
}

std::size_t QMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  return t;
}

QMatrix QMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> where(cols_, static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < cols.size(); ++k) where.at(cols[k]) = k;
  QMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r])
      if (where[c] != static_cast<std::size_t>(-1)) out.data_[r].emplace_back(where[c], v);
    std::sort(out.data_[r].begin(), out.data_[r].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw MathError("QMatrix product: shape mismatch");
  QMatrix out(a.rows_, b.cols_);
  std::map<std::size_t, Rational> acc;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    acc.clear();
    for (const auto& [k, v] : a.data_[r])
      for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
    for (auto& [c, v] : acc)
      if (sgn(v) != 0) out.data_[r].emplace_back(c, v);
  }
  return out;
}

namespace {
QMatrix combine(const QMatrix& a, const QMatrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("QMatrix sum: shape mismatch");
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& [c, v] : a.row(r)) t.emplace_back(r, c, v);
    for (const auto& [c, v] : b.row(r)) t.emplace_back(r, c, sign > 0 ? Rational(v) : Rational(-v));
  }
  return QMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}
}  // namespace

QMatrix operator+(const QMatrix& a, const QMatrix& b) { return combine(a, b, 1); }
QMatrix operator-(const QMatrix& a, const QMatrix& b) { return combine(a, b, -1); }

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Rational> apply(const QMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.cols()) throw MathError("apply: shape mismatch");
  std::vector<Rational> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r)) out[r] += x * v[c];
  return out;
}

// ---------------------------------------------------------------------------
// EchelonBasis

EchelonBasis::IntRow EchelonBasis::to_int_row(const SparseRow& v) {
  Integer l = 1;
  for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  IntRow out;
  out.reserve(v.size());
  for (const auto& [c, x] : v) {
    Integer n = x.get_num() * (l / x.get_den());
    out.emplace_back(c, std::move(n));
  }
  return out;
}

namespace {

void make_primitive(EchelonBasis::IntRow& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& e : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(v.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

void EchelonBasis::eliminate(IntRow& v, bool full) const {
  IntRow merged;
  std::size_t i = 0;
  while (i < v.size()) {
    const std::size_t col = v[i].first;
    const std::size_t pr = pivot_row_[col];
    if (pr == npos) {
      if (!full) return;
      ++i;
      continue;
    }
    const IntRow& p = rows_[pr];
    const Integer a = p.front().second;  // > 0
    const Integer b = v[i].second;
    merged.clear();
    merged.reserve(v.size() + p.size());
    const bool scale = a != 1;
    for (std::size_t j = 0; j < i; ++j)
      merged.emplace_back(v[j].first, scale ? Integer(v[j].second * a) : v[j].second);
    std::size_t x = i, y = 0;
    while (x < v.size() || y < p.size()) {
      if (y == p.size() || (x < v.size() && v[x].first < p[y].first)) {
        merged.emplace_back(v[x].first, scale ? Integer(v[x].second * a) : v[x].second);
        ++x;
      } else if (x == v.size() || p[y].first < v[x].first) {
        merged.emplace_back(p[y].first, Integer(-b * p[y].second));
        ++y;
      } else {
        Integer n = scale ? Integer(v[x].second * a - b * p[y].second)
                          : Integer(v[x].second - b * p[y].second);
        if (sgn(n) != 0) merged.emplace_back(v[x].first, std::move(n));
        ++x;
        ++y;
      }
    }
    v.swap(merged);
    if (scale) make_primitive(v);
  }
}

bool EchelonBasis::insert_int(IntRow v) {
  eliminate(v, false);
  if (v.empty()) return false;
  make_primitive(v);
  pivot_row_[v.front().first] = rows_.size();
  rows_.push_back(std::move(v));
  return true;
}

bool EchelonBasis::insert(const SparseRow& v) { return insert_int(to_int_row(v)); }

EchelonBasis::IntRow EchelonBasis::reduce(IntRow v) const {
  eliminate(v, true);
  make_primitive(v);
  return v;
}

std::vector<std::size_t> EchelonBasis::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& r : rows_) out.push_back(r.front().first);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.rows() <= m.cols()) {
    EchelonBasis e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.row(r).empty()) e.insert(m.row(r));
    return e.rank();
  }
  return rank(m.transpose());
}

namespace {

// Kernel vectors of the system given by echelon rows over `width` columns,
// one per free column.  Back substitution in decreasing pivot order.
std::vector<std::vector<Rational>> kernel_vectors(const EchelonBasis& e, std::size_t width) {
  std::vector<const EchelonBasis::IntRow*> by_pivot;
  for (const auto& r : e.rows()) by_pivot.push_back(&r);
  std::sort(by_pivot.begin(), by_pivot.end(),
            [](const auto* a, const auto* b) { return a->front().first > b->front().first; });
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < width; ++f) {
    if (e.is_pivot(f)) continue;
    std::vector<Rational> x(width);
    x[f] = 1;
    for (const auto* row : by_pivot) {
      const std::size_t p = row->front().first;
      if (p > f) continue;  // x_p = 0: every later column involved is zero
      Rational s = 0;
      for (std::size_t k = 1; k < row->size(); ++k) {
        const auto& [c, a] = (*row)[k];
        if (sgn(x[c]) != 0) s += Rational(a) * x[c];
      }
      x[p] = -s / Rational(row->front().second);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

RankKernel rank_kernel(const QMatrix& m) {
  RankKernel out;
  EchelonBasis e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) e.insert(m.row(r));
  out.rank = e.rank();
  out.image_basis = m.select_columns(e.pivot_columns());
  const auto ker = kernel_vectors(e, m.cols());
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t k = 0; k < ker.size(); ++k)
    for (std::size_t r = 0; r < m.cols(); ++r)
      if (sgn(ker[k][r]) != 0) t.emplace_back(r, k, ker[k][r]);
  out.kernel_basis = QMatrix::from_triplets(m.cols(), ker.size(), std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// VComplex

VComplex::VComplex(int lo, std::vector<std::size_t> dims, std::vector<QMatrix> diffs)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  if (dims_.empty()) {
    diffs_.clear();
    return;
  }
  if (diffs_.size() + 1 != dims_.size()) throw MathError("VComplex: need one differential per gap");
  for (std::size_t k = 0; k < diffs_.size(); ++k)
    if (diffs_[k].rows() != dims_[k + 1] || diffs_[k].cols() != dims_[k])
      throw MathError("VComplex: differential shape mismatch at degree " +
                      std::to_string(lo_ + static_cast<int>(k)));
}

std::size_t VComplex::dim(int s) const {
  if (s < lo_ || s > hi()) return 0;
  return dims_[static_cast<std::size_t>(s - lo_)];
}

const QMatrix* VComplex::diff_ptr(int s) const {
  if (s < lo_ || s >= hi()) return nullptr;
  return &diffs_[static_cast<std::size_t>(s - lo_)];
}

QMatrix VComplex::diff(int s) const {
  if (const auto* p = diff_ptr(s)) return *p;
  return QMatrix(dim(s + 1), dim(s));
}

long VComplex::euler_characteristic() const {
  long chi = 0;
  for (int s = lo_; s <= hi(); ++s)
    chi += ((s % 2 == 0) ? 1 : -1) * static_cast<long>(dim(s));
  return chi;
}

bool VComplex::is_complex() const {
  for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
    if (!(diffs_[k + 1] * diffs_[k]).is_zero()) return false;
  return true;
}

CohomologyPiece middle_cohomology(const QMatrix* d_in, const QMatrix* d_out, std::size_t dim) {
  CohomologyPiece out;
  EchelonBasis boundaries(dim);
  if (d_in != nullptr) {
    const QMatrix cols = d_in->transpose();
    for (std::size_t c = 0; c < cols.rows(); ++c)
      if (!cols.row(c).empty()) boundaries.insert(cols.row(c));
  }
  // Coordinates off the boundary pivots form a complement W of B; since
  // B lies in Z, Z = B + (Z n W) and Z n W = ker(d_out restricted to W).
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> where(dim, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < dim; ++c)
    if (!boundaries.is_pivot(c)) {
      where[c] = free_cols.size();
      free_cols.push_back(c);
    }
  EchelonBasis restricted(free_cols.size());
  if (d_out != nullptr) {
    for (std::size_t r = 0; r < d_out->rows(); ++r) {
      SparseRow row;
      for (const auto& [c, v] : d_out->row(r))
        if (where[c] != static_cast<std::size_t>(-1)) row.emplace_back(where[c], v);
      if (!row.empty()) restricted.insert(row);
    }
  }
  const auto ker = kernel_vectors(restricted, free_cols.size());
  out.dim = ker.size();
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t k = 0; k < ker.size(); ++k)
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      if (sgn(ker[k][i]) != 0) t.emplace_back(free_cols[i], k, ker[k][i]);
  out.representatives = QMatrix::from_triplets(dim, ker.size(), std::move(t));
  return out;
}

std::map<int, CohomologyPiece> complex_cohomology(const VComplex& c, CohomologyOptions opts) {
  if (opts.check_complex && !c.is_complex())
    throw MathError("complex_cohomology: d o d != 0");
  std::map<int, CohomologyPiece> out;
  if (c.empty()) return out;
  if (!opts.representatives) {
    for (const auto& [s, d] : cohomology_dims(c, false)) out[s].dim = d;
    return out;
  }
  for (int s = c.lo(); s <= c.hi(); ++s)
    out[s] = middle_cohomology(c.diff_ptr(s - 1), c.diff_ptr(s), c.dim(s));
  return out;
}

std::map<int, std::size_t> cohomology_dims(const VComplex& c, bool check_complex) {
  if (check_complex && !c.is_complex()) throw MathError("complex_cohomology: d o d != 0");
  std::map<int, std::size_t> out;
  if (c.empty()) return out;
  std::map<int, std::size_t> ranks;
  for (int s = c.lo(); s < c.hi(); ++s) ranks[s] = rank(*c.diff_ptr(s));
  for (int s = c.lo(); s <= c.hi(); ++s) {
    const std::size_t r_out = ranks.count(s) ? ranks[s] : 0;
    const std::size_t r_in = ranks.count(s - 1) ? ranks[s - 1] : 0;
    out[s] = c.dim(s) - r_out - r_in;
  }
  return out;
}

}  // namespace dbcoh
