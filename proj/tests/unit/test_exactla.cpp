#include "dbcoh/exactla.hpp"

#include <doctest.h>

#include <random>

using namespace dbcoh;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Textbook dense Gaussian elimination, independent of the sparse kernel.
std::size_t dense_rank(Dense a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

Dense to_dense(const QMatrix& m) {
  Dense d(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) d[r][c] = v;
  return d;
}

// rows x cols matrix of rank <= k: product of random integer factors.
QMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> a, b;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < k; ++j) a.emplace_back(i, j, Rational(coef(rng)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coef(rng) > 0) b.emplace_back(i, j, Rational(coef(rng)));
  return QMatrix::from_triplets(rows, k, a) * QMatrix::from_triplets(k, cols, b);
}

}  // namespace

TEST_CASE("ratio canonicalizes") {
  CHECK(ratio(2, -4) == Rational(-1, 2));
  CHECK(ratio(-6, -3) == 2);
  CHECK_THROWS(ratio(1, 0));
}

TEST_CASE("basic matrix algebra") {
  const QMatrix a = QMatrix::from_rows({{1, 2}, {3, 4}});
  const QMatrix i = QMatrix::identity(2);
  CHECK(a * i == a);
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK((a - a).is_zero());
  CHECK((a + a).at(1, 1) == 8);
  CHECK(a.nonzeros() == 4);
  CHECK(dbcoh::apply(a, {1, 1}) == std::vector<Rational>{3, 7});
  const auto t = QMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 2}, {1, 1, 5}, {1, 1, -5}});
  CHECK(t.at(0, 0) == 3);
  CHECK(t.row(1).empty());
}

TEST_CASE("rank agrees with dense elimination on random low-rank matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9, k = rng() % 6;
    const QMatrix m = low_rank(rows, cols, k, rng);
    const std::size_t expect = dense_rank(to_dense(m));
    CHECK(rank(m) == expect);
    const RankKernel rk = rank_kernel(m);
    CHECK(rk.rank == expect);
    CHECK(rk.kernel_basis.cols() == cols - expect);
    CHECK((m * rk.kernel_basis).is_zero());
    CHECK(dense_rank(to_dense(rk.kernel_basis)) == cols - expect);
    CHECK(rk.image_basis.cols() == expect);
  }
}

TEST_CASE("echelon basis reports independence") {
  EchelonBasis b(3);
  CHECK(b.insert({{0, 1}, {1, 2}}));
  CHECK(b.insert({{1, 1}}));
  CHECK_FALSE(b.insert({{0, 2}, {1, 7}}));
  CHECK(b.rank() == 2);
  const auto red = b.reduce(EchelonBasis::to_int_row({{0, 1}, {2, 1}}));
  for (const auto& [c, v] : red) CHECK_FALSE(b.is_pivot(c));
}

TEST_CASE("cohomology of random complexes matches rank counts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    // A -> B -> C with d2 d1 = 0: d1 = P Q, d2 = R S with S P = 0 arranged
    // by taking d2 to kill the image: d2 = K^T-style projection.
    const std::size_t a = 1 + rng() % 5, b = 2 + rng() % 6, c = 1 + rng() % 5;
    const QMatrix d1 = low_rank(b, a, rng() % 3, rng);
    // Rows of d2 vanish on the column space of d1.
    const QMatrix left = rank_kernel(d1.transpose()).kernel_basis.transpose();
    const QMatrix d2 = low_rank(c, left.rows(), std::min<std::size_t>(2, left.rows()), rng) * left;
    const VComplex cx(0, {a, b, c}, {d1, d2});
    REQUIRE(cx.is_complex());
    const auto h = complex_cohomology(cx);
    const std::size_t r1 = dense_rank(to_dense(d1)), r2 = dense_rank(to_dense(d2));
    CHECK(h.at(0).dim == a - r1);
    CHECK(h.at(1).dim == b - r1 - r2);
    CHECK(h.at(2).dim == c - r2);
    CHECK(cohomology_dims(cx).at(1) == h.at(1).dim);
    // Representatives are cocycles, independent modulo boundaries.
    const QMatrix& reps = h.at(1).representatives;
    CHECK((d2 * reps).is_zero());
    Dense joined = to_dense(d1.transpose());
    for (auto& row : to_dense(reps.transpose())) joined.push_back(row);
    CHECK(dense_rank(joined) == r1 + h.at(1).dim);
    long chi = static_cast<long>(a) - static_cast<long>(b) + static_cast<long>(c);
    CHECK(cx.euler_characteristic() == chi);
  }
}

TEST_CASE("d o d != 0 is rejected when checking") {
  const QMatrix d = QMatrix::from_rows({{1}});
  const VComplex cx(0, {1, 1, 1}, {d, d});
  CHECK_FALSE(cx.is_complex());
  CHECK_THROWS_AS(complex_cohomology(cx), MathError);
}
