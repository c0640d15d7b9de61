#pragma once

// Exact rational linear algebra over Q.
//
// QMatrix has dense semantics (every (r, c) has a value) but stores its rows
// sparsely: the matrices that come out of Hom complexes and graded pieces
// are overwhelmingly zero, and a dense store would not fit for the larger
// P^2 / P^3 computations.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace dbcoh {

using Rational = mpq_class;
using Integer = mpz_class;

/// n / d in lowest terms with a positive denominator.
inline Rational ratio(long n, long d) {
  if (d == 0) throw std::domain_error("ratio: zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One row of a QMatrix: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  /// Builds from (row, col, value) triplets; repeated positions are summed.
  static QMatrix from_triplets(std::size_t rows, std::size_t cols,
                               std::vector<std::tuple<std::size_t, std::size_t, Rational>> t);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  const SparseRow& row(std::size_t r) const { return data_.at(r); }
  /// Column c as a dense vector.
  std::vector<Rational> column(std::size_t c) const;

  bool is_zero() const;
  std::size_t nonzeros() const;
  QMatrix transpose() const;
  /// Submatrix keeping the listed columns (in the given order).
  QMatrix select_columns(const std::vector<std::size_t>& cols) const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

std::vector<Rational> apply(const QMatrix& m, const std::vector<Rational>& v);

/// Incremental row-echelon basis of a subspace of Q^dim.
///
/// Rows are kept as primitive integer vectors with a positive leading entry;
/// the leading column of each stored row is its pivot.  Reduction is
/// fraction-free, which keeps coefficient growth in check on the structured
/// matrices produced by the Koszul/graded-piece machinery.
class EchelonBasis {
 public:
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;

  explicit EchelonBasis(std::size_t dim) : dim_(dim), pivot_row_(dim, npos) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Inserts v; returns true if v was independent of the current span.
  bool insert(const SparseRow& v);
  bool insert_int(IntRow v);

  /// Fully reduces v: the result has no entry in any pivot column and
  /// differs from v by an element of the span (up to a nonzero scalar).
  IntRow reduce(IntRow v) const;

  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }
  std::vector<std::size_t> pivot_columns() const;
  const std::vector<IntRow>& rows() const { return rows_; }

  static IntRow to_int_row(const SparseRow& v);

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  // Eliminates pivots from v, stopping at the first unpivoted leading entry
  // unless full is set.
  void eliminate(IntRow& v, bool full) const;

  std::size_t dim_;
  std::vector<std::size_t> pivot_row_;
  std::vector<IntRow> rows_;
};

struct RankKernel {
  std::size_t rank = 0;
  QMatrix kernel_basis;  ///< cols - rank columns, each annihilated by M
  QMatrix image_basis;   ///< rank columns of M spanning its column space
};

std::size_t rank(const QMatrix& m);
RankKernel rank_kernel(const QMatrix& m);

/// Finite cochain complex of Q-vector spaces, degrees lo .. lo + dims.size() - 1.
/// diffs[k] maps degree lo + k to lo + k + 1 (shape dims[k+1] x dims[k]).
class VComplex {
 public:
  VComplex() = default;
  VComplex(int lo, std::vector<std::size_t> dims, std::vector<QMatrix> diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }
  std::size_t dim(int s) const;
  /// Differential out of degree s (zero matrix of the right shape if none).
  QMatrix diff(int s) const;
  const QMatrix* diff_ptr(int s) const;

  long euler_characteristic() const;
  /// True when d(s+1) d(s) = 0 for every s.
  bool is_complex() const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<QMatrix> diffs_;
};

struct CohomologyPiece {
  std::size_t dim = 0;
  QMatrix representatives;  ///< columns are cocycles whose classes form a basis
};

struct CohomologyOptions {
  bool check_complex = true;
  bool representatives = true;
};

/// Cohomology of every degree in [C.lo(), C.hi()].  Throws MathError when
/// check_complex is set and d o d != 0.
std::map<int, CohomologyPiece> complex_cohomology(const VComplex& c,
                                                  CohomologyOptions opts = {});

/// Cohomology dimensions only.
std::map<int, std::size_t> cohomology_dims(const VComplex& c, bool check_complex = false);

/// H at the middle of  A --d_in--> B --d_out--> C  with representatives.
CohomologyPiece middle_cohomology(const QMatrix* d_in, const QMatrix* d_out, std::size_t dim);

}  // namespace dbcoh
