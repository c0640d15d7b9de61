#include "dbcoh/ktheory.hpp"

namespace dbcoh {

namespace {

void require_same(const KClass& u, const KClass& v) {
  if (u.coeffs.size() != v.coeffs.size()) throw MathError("KClass: mismatched dimensions");
}

// Lagrange basis polynomial L_j at d on the nodes 0..m; integral since
// t^d = sum_j L_j(d) t^j in Z[t]/(1-t)^{m+1}.
Integer lagrange(int m, int j, int d) {
  Rational v = 1;
  for (int i = 0; i <= m; ++i)
    if (i != j) v *= ratio(d - i, j - i);
  if (v.get_den() != 1) throw MathError("lagrange: non-integral value");
  return v.get_num();
}

}  // namespace

KClass& KClass::operator+=(const KClass& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

KClass operator*(const Integer& c, KClass a) {
  for (auto& x : a.coeffs) x *= c;
  return a;
}

KClass line_class(int m, int d) {
  KClass k = KClass::zero(m);
  for (int j = 0; j <= m; ++j) k.coeffs[static_cast<std::size_t>(j)] = lagrange(m, j, d);
  return k;
}

KClass class_of(const DObject& e) {
  KClass k = KClass::zero(e.m());
  for (const auto& [t, tw] : e.terms())
    for (int a : tw) {
      if (t % 2 == 0)
        k += line_class(e.m(), a);
      else
        k -= line_class(e.m(), a);
    }
  return k;
}

KClass class_product(const KClass& u, const KClass& v) {
  require_same(u, v);
  const int m = u.m();
  KClass out = KClass::zero(m);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const Integer c = u.coeffs[static_cast<std::size_t>(i)] * v.coeffs[static_cast<std::size_t>(j)];
      if (c != 0) out += c * line_class(m, i + j);
    }
  return out;
}

IntMatrix euler_matrix(int m) {
  IntMatrix g(static_cast<std::size_t>(m) + 1, std::vector<Integer>(static_cast<std::size_t>(m) + 1));
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b) {
      Rational v = 1;
      for (int i = 1; i <= m; ++i) v *= ratio(b - a + i, i);
      g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v.get_num();
    }
  return g;
}

Integer euler_form(const KClass& u, const KClass& v) {
  require_same(u, v);
  const IntMatrix g = euler_matrix(u.m());
  Integer s = 0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) s += u.coeffs[a] * g[a][b] * v.coeffs[b];
  return s;
}

KClass k_mutate(const KClass& u, const KClass& v, MutationSide side) {
  const Integer chi = euler_form(u, v);
  return side == MutationSide::left ? chi * u - v : chi * v - u;
}

IntMatrix twist_matrix(int m, int k) {
  const auto n = static_cast<std::size_t>(m) + 1;
  IntMatrix t(n, std::vector<Integer>(n));
  for (int j = 0; j <= m; ++j) {
    const KClass c = line_class(m, j + k);
    for (std::size_t i = 0; i < n; ++i) t[i][static_cast<std::size_t>(j)] = c.coeffs[i];
  }
  return t;
}

IntMatrix serre_matrix(int m) {
  IntMatrix s = twist_matrix(m, -m - 1);
  if (m % 2 != 0)
    for (auto& row : s)
      for (auto& x : row) x = -x;
  return s;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(a.size(), std::vector<Integer>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw MathError("multiply: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  }
  return c;
}

IntMatrix subtract(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b.at(i).at(j);
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return a;
  IntMatrix t(a[0].size(), std::vector<Integer>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMatrix power(const IntMatrix& a, int k) {
  IntMatrix r = identity_matrix(a.size());
  for (int i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

bool is_zero(const IntMatrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

Integer determinant(const IntMatrix& a) {
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  const std::size_t n = m.size();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix gram_matrix(const std::vector<KClass>& classes) {
  IntMatrix g(classes.size(), std::vector<Integer>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j) g[i][j] = euler_form(classes[i], classes[j]);
  return g;
}

bool is_upper_unitriangular(const IntMatrix& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (g[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

bool is_k0_basis(const std::vector<KClass>& classes) {
  if (classes.empty() || classes.size() != classes[0].coeffs.size()) return false;
  IntMatrix a;
  for (const auto& c : classes) a.push_back(c.coeffs);
  const Integer d = determinant(a);
  return d == 1 || d == -1;
}

bool canonical_twist_unipotent(int m) {
  const IntMatrix n = subtract(twist_matrix(m, -m - 1), identity_matrix(static_cast<std::size_t>(m) + 1));
  return is_zero(power(n, m + 1));
}

bool serre_symmetrizes(int m) {
  const IntMatrix g = euler_matrix(m);
  return transpose(g) == multiply(g, serre_matrix(m));
}

}  // namespace dbcoh
