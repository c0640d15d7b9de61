#include "dbcoh/polyring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace dbcoh {

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVars))
    throw MathError("Monomial: too many variables");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > kMaxExponent)
      throw MathError("Monomial: exponent out of range");
    code_ |= static_cast<std::uint64_t>(exponents[i]) << shift(static_cast<int>(i));
  }
}

Monomial Monomial::variable(int i) { return from_code(std::uint64_t{1} << shift(i)); }

int Monomial::degree() const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += exponent(i);
  return d;
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> e(static_cast<std::size_t>(nvars));
  for (int i = 0; i < nvars; ++i) e[static_cast<std::size_t>(i)] = exponent(i);
  return e;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::size_t sym_dim(int m, int d) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(binomial(d + m, m));
}

namespace {
void enumerate(int var, int nvars, int remaining, std::vector<int>& e, std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    e[static_cast<std::size_t>(var)] = remaining;
    out.emplace_back(e);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    e[static_cast<std::size_t>(var)] = k;
    enumerate(var + 1, nvars, remaining - k, e, out);
  }
}
}  // namespace

std::vector<Monomial> monomial_basis(int m, int d) {
  if (m < 0) throw MathError("monomial_basis: negative dimension");
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.reserve(sym_dim(m, d));
  std::vector<int> e(static_cast<std::size_t>(m + 1));
  enumerate(0, m + 1, d, e, out);
  return out;
}

std::size_t monomial_index(int m, Monomial mono) {
  const int n = m + 1;
  int remaining = mono.degree();
  std::size_t idx = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const int e = mono.exponent(i);
    const int v = n - i - 1;
    if (e < remaining) idx += static_cast<std::size_t>(binomial(remaining - e - 1 + v, v));
    remaining -= e;
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(int degree, std::vector<Term> terms) : degree_(degree), terms_(std::move(terms)) {
  for (const auto& [mono, c] : terms_)
    if (sgn(c) != 0 && mono.degree() != degree_)
      throw MathError("Poly: inhomogeneous term of degree " + std::to_string(mono.degree()) +
                      " in a polynomial of degree " + std::to_string(degree_));
  normalize();
}

Poly Poly::constant(const Rational& c) { return Poly(0, {{Monomial{}, c}}); }
Poly Poly::variable(int i) { return Poly(1, {{Monomial::variable(i), Rational(1)}}); }
Poly Poly::monomial(Monomial mono, const Rational& c) { return Poly(mono.degree(), {{mono, c}}); }

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return sgn(t.second) == 0; });
  terms_ = std::move(out);
}

Rational Poly::scalar() const {
  if (degree_ != 0 || terms_.empty()) return Rational(0);
  return terms_.front().second;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

namespace {
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                                    int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, sign > 0 ? b[j].second : Rational(-b[j].second));
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].second + b[j].second) : Rational(a[i].second - b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (o.degree_ != degree_) throw MathError("Poly: adding polynomials of different degrees");
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = -o;
    return *this;
  }
  if (o.degree_ != degree_) throw MathError("Poly: subtracting polynomials of different degrees");
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a.degree_ + b.degree_);
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.terms_.emplace_back(ma * mb, ca * cb);
  out.normalize();
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(std::max(degree_ - 1, 0));
  if (degree_ == 0) return out;
  for (const auto& [mono, c] : terms_) {
    const int e = mono.exponent(var);
    if (e == 0) continue;
    out.terms_.emplace_back(Monomial::from_code(mono.code() - Monomial::variable(var).code()),
                            c * e);
  }
  out.normalize();
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& [mono, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (int k = 0; k < mono.exponent(static_cast<int>(i)); ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string Poly::to_string(int nvars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    const bool unit = a == 1 && mono.degree() > 0;
    if (!unit) os << a.get_str();
    bool any = !unit;
    for (int i = 0; i < nvars; ++i) {
      const int e = mono.exponent(i);
      if (e == 0) continue;
      if (any) os << "*";
      os << "x" << i;
      if (e > 1) os << "^" << e;
      any = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(std::vector<int> row_twists, std::vector<int> col_twists)
    : row_twists_(std::move(row_twists)), col_twists_(std::move(col_twists)), data_(row_twists_.size()) {}

PolyMatrix PolyMatrix::identity(const std::vector<int>& twists) {
  PolyMatrix m(twists, twists);
  for (std::size_t i = 0; i < twists.size(); ++i) m.data_[i].emplace_back(i, Poly::constant(1));
  return m;
}

const Poly* PolyMatrix::find(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return &it->second;
  return nullptr;
}

Poly PolyMatrix::at(std::size_t r, std::size_t c) const {
  if (const Poly* p = find(r, c)) return *p;
  return Poly(std::max(required_degree(r, c), 0));
}

void PolyMatrix::set(std::size_t r, std::size_t c, Poly p) {
  if (c >= cols()) throw MathError("PolyMatrix::set: column out of range");
  auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  const bool present = it != row.end() && it->first == c;
  if (p.is_zero()) {
    if (present) row.erase(it);
    return;
  }
  if (p.degree() != required_degree(r, c))
    throw MathError("PolyMatrix: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                    ") has degree " + std::to_string(p.degree()) + ", expected " +
                    std::to_string(required_degree(r, c)));
  if (present)
    it->second = std::move(p);
  else
    row.insert(it, {c, std::move(p)});
}

void PolyMatrix::add_to(std::size_t r, std::size_t c, const Poly& p) {
  if (p.is_zero()) return;
  if (const Poly* q = find(r, c)) {
    set(r, c, *q + p);
  } else {
    set(r, c, p);
  }
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
}

std::size_t PolyMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

PolyMatrix PolyMatrix::transpose() const {
  std::vector<int> rt(col_twists_.size()), ct(row_twists_.size());
  for (std::size_t i = 0; i < rt.size(); ++i) rt[i] = -col_twists_[i];
  for (std::size_t i = 0; i < ct.size(); ++i) ct[i] = -row_twists_[i];
  PolyMatrix t(std::move(rt), std::move(ct));
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, p] : data_[r]) t.data_[c].emplace_back(r, p);
  return t;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& row : out.data_)
    for (auto& e : row) e.second = -e.second;
  return out;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
  if (sgn(c) == 0) return PolyMatrix(row_twists_, col_twists_);
  PolyMatrix out = *this;
  for (auto& row : out.data_)
    for (auto& e : row) e.second *= c;
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.col_twists_ != b.row_twists_) throw MathError("PolyMatrix product: twist mismatch");
  PolyMatrix out(a.row_twists_, b.col_twists_);
  std::map<std::size_t, Poly> acc;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    acc.clear();
    for (const auto& [k, p] : a.data_[r])
      for (const auto& [c, q] : b.data_[k]) acc[c] += p * q;
    for (auto& [c, p] : acc)
      if (!p.is_zero()) out.data_[r].emplace_back(c, std::move(p));
  }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.row_twists_ != b.row_twists_ || a.col_twists_ != b.col_twists_)
    throw MathError("PolyMatrix sum: twist mismatch");
  PolyMatrix out = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, p] : b.data_[r]) out.add_to(r, c, p);
  return out;
}

// ---------------------------------------------------------------------------

RPoint::RPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw MathError("RPoint: need at least two coordinates");
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) { return sgn(x) == 0; }))
    throw MathError("RPoint: all coordinates are zero");
}

std::vector<std::size_t> graded_offsets(const std::vector<int>& twists, int m, int d) {
  std::vector<std::size_t> off(twists.size() + 1, 0);
  for (std::size_t i = 0; i < twists.size(); ++i) off[i + 1] = off[i] + sym_dim(m, d + twists[i]);
  return off;
}

QMatrix graded_piece(const PolyMatrix& mat, int m, int d) {
  const auto src = graded_offsets(mat.col_twists(), m, d);
  const auto dst = graded_offsets(mat.row_twists(), m, d);
  std::unordered_map<int, std::vector<Monomial>> bases;
  auto basis = [&](int deg) -> const std::vector<Monomial>& {
    auto it = bases.find(deg);
    if (it == bases.end()) it = bases.emplace(deg, monomial_basis(m, deg)).first;
    return it->second;
  };
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    for (const auto& [c, f] : mat.row(r)) {
      const int sdeg = d + mat.col_twists()[c];
      if (sdeg < 0) continue;
      const auto& b = basis(sdeg);
      for (std::size_t j = 0; j < b.size(); ++j)
        for (const auto& [nu, coef] : f.terms())
          t.emplace_back(dst[r] + monomial_index(m, b[j] * nu), src[c] + j, coef);
    }
  }
  return QMatrix::from_triplets(dst.back(), src.back(), std::move(t));
}

QMatrix evaluate_at_point(const PolyMatrix& mat, const RPoint& p) {
  QMatrix out(mat.rows(), mat.cols());
  for (std::size_t r = 0; r < mat.rows(); ++r)
    for (const auto& [c, f] : mat.row(r)) out.set(r, c, f.evaluate(p.coords()));
  return out;
}

}  // namespace dbcoh
