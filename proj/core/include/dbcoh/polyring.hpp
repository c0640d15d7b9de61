#pragma once

// Homogeneous polynomials in m+1 variables over Q and matrices of them.

#include "dbcoh/exactla.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dbcoh {

/// Exponent vector packed 8 bits per variable, x_0 in the top byte, so that
/// integer order on codes is lexicographic order on exponent vectors.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;
  static constexpr int kMaxExponent = 255;

  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);
  static Monomial from_code(std::uint64_t code) {
    Monomial m;
    m.code_ = code;
    return m;
  }
  static Monomial variable(int i);

  int exponent(int i) const { return static_cast<int>((code_ >> shift(i)) & 0xffu); }
  int degree() const;
  std::vector<int> exponents(int nvars) const;
  std::uint64_t code() const { return code_; }

  /// Product; the caller guarantees no exponent overflows kMaxExponent.
  Monomial operator*(Monomial o) const { return from_code(code_ + o.code_); }
  friend auto operator<=>(Monomial a, Monomial b) = default;

 private:
  static int shift(int i) { return 8 * (kMaxVars - 1 - i); }
  std::uint64_t code_ = 0;
};

/// All degree-d monomials in m+1 variables, lexicographically descending
/// (x_0^d first).  Empty when d < 0.
std::vector<Monomial> monomial_basis(int m, int d);
/// Position of mono in monomial_basis(m, mono.degree()).
std::size_t monomial_index(int m, Monomial mono);
/// C(d+m, m) for d >= 0, else 0.
std::size_t sym_dim(int m, int d);
/// Exact binomial coefficient for small nonnegative arguments.
std::uint64_t binomial(int n, int k);

/// Homogeneous polynomial of a declared degree.  Terms are sorted by
/// descending monomial and have nonzero coefficients; the zero polynomial
/// keeps its degree annotation.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  explicit Poly(int degree) : degree_(degree) {}
  /// Throws MathError on a term whose total degree differs from `degree`.
  Poly(int degree, std::vector<Term> terms);

  static Poly constant(const Rational& c);
  static Poly variable(int i);
  static Poly monomial(Monomial mono, const Rational& c = 1);

  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the constant term if degree 0, else 0.
  Rational scalar() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly derivative(int var) const;
  Rational evaluate(std::span<const Rational> point) const;
  std::string to_string(int nvars) const;

 private:
  void normalize();
  int degree_ = 0;
  std::vector<Term> terms_;
};

/// Matrix of homogeneous polynomials representing a map
///   (+)_c O(col_twists[c])  ->  (+)_r O(row_twists[r]).
/// Entry (r, c) has degree row_twists[r] - col_twists[c]; entries whose
/// required degree is negative are forced zero.  Storage is row-sparse.
class PolyMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, Poly>>;

  PolyMatrix() = default;
  PolyMatrix(std::vector<int> row_twists, std::vector<int> col_twists);

  static PolyMatrix identity(const std::vector<int>& twists);

  const std::vector<int>& row_twists() const { return row_twists_; }
  const std::vector<int>& col_twists() const { return col_twists_; }
  std::size_t rows() const { return row_twists_.size(); }
  std::size_t cols() const { return col_twists_.size(); }
  int required_degree(std::size_t r, std::size_t c) const {
    return row_twists_.at(r) - col_twists_.at(c);
  }

  /// Zero polynomial of the right degree when absent.
  Poly at(std::size_t r, std::size_t c) const;
  const Poly* find(std::size_t r, std::size_t c) const;
  /// Throws MathError if p is not homogeneous of required_degree(r, c),
  /// unless p is zero.
  void set(std::size_t r, std::size_t c, Poly p);
  void add_to(std::size_t r, std::size_t c, const Poly& p);
  const Row& row(std::size_t r) const { return data_.at(r); }

  bool is_zero() const;
  std::size_t nonzeros() const;
  PolyMatrix transpose() const;  ///< twists are negated: the dual map
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Rational& c) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  std::vector<int> row_twists_;
  std::vector<int> col_twists_;
  std::vector<Row> data_;
};

/// Rational point of P^m, defined up to scalar.
class RPoint {
 public:
  /// Throws MathError on the all-zero vector.
  explicit RPoint(std::vector<Rational> coords);
  const std::vector<Rational>& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }

 private:
  std::vector<Rational> coords_;
};

/// Degree-d piece of the map of graded modules: the linear map
///   (+)_c S_{d + a_c}  ->  (+)_r S_{d + b_r}
/// given by multiplication with the entries, in monomial_basis order.
/// At d = 0 this is the induced map on global sections.
QMatrix graded_piece(const PolyMatrix& mat, int m, int d);
/// Offsets of each summand's block inside (+)_i S_{d + twists_i}.
std::vector<std::size_t> graded_offsets(const std::vector<int>& twists, int m, int d);

/// Scalar matrix of the entries evaluated at p.
QMatrix evaluate_at_point(const PolyMatrix& m, const RPoint& p);

}  // namespace dbcoh
