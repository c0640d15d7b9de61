#include "dbcoh/polyring.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <set>

using namespace dbcoh;

namespace {

// Coordinates of a polynomial in monomial_basis order.
std::vector<Rational> coords(const Poly& p, int m) {
  std::vector<Rational> v(sym_dim(m, p.degree()));
  for (const auto& [mono, c] : p.terms()) v[monomial_index(m, mono)] = c;
  return v;
}

}  // namespace

TEST_CASE("monomial bases") {
  for (int m = 1; m <= 3; ++m)
    for (int d = 0; d <= 5; ++d) {
      const auto b = monomial_basis(m, d);
      CHECK(b.size() == sym_dim(m, d));
      CHECK(sym_dim(m, d) == binomial(d + m, m));
      std::set<std::uint64_t> codes;
      for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b[i].degree() == d);
        CHECK(monomial_index(m, b[i]) == i);
        if (i > 0) CHECK(b[i - 1] > b[i]);
        codes.insert(b[i].code());
      }
      CHECK(codes.size() == b.size());
    }
  CHECK(monomial_basis(2, -1).empty());
  CHECK(sym_dim(2, 2) == 6);
}

TEST_CASE("polynomial arithmetic") {
  const Poly x = Poly::variable(0), y = Poly::variable(1);
  const Poly s = x + y;
  const Poly sq = s * s;
  CHECK(sq.degree() == 2);
  CHECK(sq.terms().size() == 3);
  CHECK((sq - x * x - y * y) == (x * y) * Rational(2));
  CHECK((s - s).is_zero());
  CHECK(Poly::constant(5).scalar() == 5);
  const std::vector<Rational> pt{2, 3, 1};
  CHECK(sq.evaluate(pt) == 25);
  CHECK_THROWS_AS(Poly(1, {{Monomial::variable(0), 1}, {Monomial::variable(0) * Monomial::variable(1), 1}}), MathError);
}

TEST_CASE("Euler identity: sum x_i d_i f = deg(f) f") {
  dbcoh::testing::Rng rng(3);
  for (int m = 1; m <= 3; ++m)
    for (int d = 1; d <= 4; ++d) {
      const Poly f = dbcoh::testing::random_form(m, d, rng);
      Poly acc(d);
      for (int i = 0; i <= m; ++i) acc += Poly::variable(i) * f.derivative(i);
      CHECK(acc == f * Rational(d));
    }
}

TEST_CASE("matrix entries are checked for homogeneity") {
  PolyMatrix a({1, 2}, {0});
  a.set(0, 0, Poly::variable(0));
  CHECK_THROWS_AS(a.set(1, 0, Poly::variable(1)), MathError);
  PolyMatrix b({0}, {1});
  CHECK_THROWS_AS(b.set(0, 0, Poly::constant(1)), MathError);
  b.set(0, 0, Poly(-1));
  CHECK(b.is_zero());
}

TEST_CASE("graded pieces realize multiplication and compose") {
  dbcoh::testing::Rng rng(5);
  for (int m = 1; m <= 2; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      // A : O(0)^2 -> O(1) + O(2),  B : O(-1) -> O(0)^2
      PolyMatrix a({1, 2}, {0, 0}), b({0, 0}, {-1});
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) a.set(r, c, dbcoh::testing::random_form(m, static_cast<int>(r) + 1, rng));
      for (std::size_t r = 0; r < 2; ++r) b.set(r, 0, dbcoh::testing::random_form(m, 1, rng));
      for (int d = 0; d <= 3; ++d) {
        CHECK(graded_piece(a * b, m, d) == graded_piece(a, m, d) * graded_piece(b, m, d));
        // Direct multiplication on a random input vector.
        const Poly u = dbcoh::testing::random_form(m, d, rng), v = dbcoh::testing::random_form(m, d, rng);
        std::vector<Rational> in = coords(u, m);
        const auto cv = coords(v, m);
        in.insert(in.end(), cv.begin(), cv.end());
        const auto got = dbcoh::apply(graded_piece(a, m, d), in);
        std::vector<Rational> want;
        for (std::size_t r = 0; r < 2; ++r) {
          const auto w = coords(a.at(r, 0) * u + a.at(r, 1) * v, m);
          want.insert(want.end(), w.begin(), w.end());
        }
        CHECK(got == want);
      }
    }
}

TEST_CASE("evaluation at points") {
  PolyMatrix a({1}, {0, 0});
  a.set(0, 0, Poly::variable(0));
  a.set(0, 1, Poly::variable(1) * Rational(3));
  const QMatrix e = evaluate_at_point(a, RPoint({2, 5}));
  CHECK(e.at(0, 0) == 2);
  CHECK(e.at(0, 1) == 15);
  CHECK_THROWS_AS(RPoint({0, 0}), MathError);
}

TEST_CASE("transpose negates twists") {
  PolyMatrix a({2}, {1});
  a.set(0, 0, Poly::variable(1));
  const PolyMatrix t = a.transpose();
  CHECK(t.row_twists() == std::vector<int>{-1});
  CHECK(t.col_twists() == std::vector<int>{-2});
  CHECK(t.at(0, 0) == Poly::variable(1));
  CHECK(t.transpose() == a);
}
