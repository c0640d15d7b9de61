#include "dbcoh/cohom.hpp"
#include "dbcoh/ktheory.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace dbcoh;
using dbcoh::testing::Rng;

namespace {

// [O(d)] from the Koszul relation sum_i (-1)^i C(m+1, i) [O(d - i)] = 0,
// walked up or down from the basis O, ..., O(m).
KClass koszul_recursion(int m, int d) {
  std::map<int, KClass> known;
  for (int j = 0; j <= m; ++j) {
    KClass k = KClass::zero(m);
    k.coeffs[static_cast<std::size_t>(j)] = 1;
    known[j] = k;
  }
  const auto c = [&](int i) { return Integer(static_cast<long>(binomial(m + 1, i))); };
  for (int top = m + 1; top <= d; ++top) {
    KClass acc = KClass::zero(m);
    for (int i = 1; i <= m + 1; ++i) acc -= ((i % 2 ? -1 : 1) * c(i)) * known.at(top - i);
    known[top] = acc;
  }
  for (int bottom = -1; bottom >= d; --bottom) {
    // coefficient of [O(bottom)] is (-1)^{m+1}
    KClass acc = KClass::zero(m);
    for (int i = 0; i <= m; ++i) acc += ((i % 2 ? -1 : 1) * c(i)) * known.at(bottom + m + 1 - i);
    known[bottom] = ((m % 2) ? Integer(-1) : Integer(1)) * acc;
  }
  return known.at(d);
}

}  // namespace

TEST_CASE("line classes satisfy the Koszul relation") {
  for (int m = 1; m <= 3; ++m)
    for (int d = -6; d <= 8; ++d) CHECK(line_class(m, d) == koszul_recursion(m, d));
}

TEST_CASE("classes of objects") {
  const DObject o = DObject::line_bundle(2, 0);
  CHECK(class_of(o) == line_class(2, 0));
  CHECK(class_of(shift(o, 1)) == KClass::zero(2) - line_class(2, 0));
  CHECK(class_of(koszul_unit(2, KoszulDirection::raise)) == line_class(2, 0));
  CHECK(class_of(point_complex(RPoint({1, 2, 3}))) == class_of(point_complex(RPoint({1, 0, 0}))));
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const DObject e = dbcoh::testing::random_small(2, rng), f = dbcoh::testing::random_small(2, rng);
    CHECK(class_of(compact(e)) == class_of(e));
    CHECK(class_of(direct_sum(e, f)) == class_of(e) + class_of(f));
    CHECK(class_of(tensor(e, f)) == class_product(class_of(e), class_of(f)));
  }
}

TEST_CASE("Euler form matches Hom tables") {
  Rng rng(13);
  for (int m = 1; m <= 3; ++m)
    for (int i = 0; i < 15; ++i) {
      const DObject e = dbcoh::testing::random_small(m, rng, 2), f = dbcoh::testing::random_small(m, rng, 2);
      CHECK(euler_form(class_of(e), class_of(f)) == Integer(hom_total(e, f).euler_characteristic()));
    }
  // chi(k(p), k(p)) = 0 and chi(O, k(p)) = 1.
  for (int m = 1; m <= 3; ++m) {
    std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
    c[0] = 1;
    const KClass p = class_of(point_complex(RPoint(c)));
    CHECK(euler_form(p, p) == 0);
    CHECK(euler_form(line_class(m, 0), p) == 1);
  }
}

TEST_CASE("Euler matrix and Gram matrices") {
  const IntMatrix g = euler_matrix(2);
  CHECK(g[0][2] == 6);
  CHECK(g[2][0] == 0);
  CHECK(g[1][0] == 0);
  CHECK(g[0][1] == 3);
  std::vector<KClass> basis;
  for (int j = 0; j <= 2; ++j) basis.push_back(line_class(2, j));
  CHECK(gram_matrix(basis) == g);
  CHECK(is_upper_unitriangular(g));
  CHECK(is_k0_basis(basis));
  CHECK_FALSE(is_k0_basis({line_class(2, 0), line_class(2, 0), line_class(2, 1)}));
  CHECK_FALSE(is_k0_basis({line_class(2, 0), 2 * line_class(2, 1), line_class(2, 2)}));
}

TEST_CASE("determinants") {
  CHECK(determinant(identity_matrix(4)) == 1);
  CHECK(determinant({{Integer(2), Integer(3)}, {Integer(1), Integer(4)}}) == 5);
  CHECK(determinant({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}) == -1);
  CHECK(determinant({{Integer(1), Integer(2)}, {Integer(2), Integer(4)}}) == 0);
  const IntMatrix a{{Integer(1), Integer(2), Integer(0)}, {Integer(0), Integer(1), Integer(5)}, {Integer(3), Integer(0), Integer(1)}};
  const IntMatrix b = transpose(a);
  CHECK(determinant(multiply(a, b)) == determinant(a) * determinant(b));
}

TEST_CASE("twist and Serre matrices") {
  for (int m = 1; m <= 4; ++m) {
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    CHECK(twist_matrix(m, 0) == identity_matrix(n));
    CHECK(multiply(twist_matrix(m, 2), twist_matrix(m, -3)) == twist_matrix(m, -1));
    CHECK(power(twist_matrix(m, 1), 3) == twist_matrix(m, 3));
    CHECK(canonical_twist_unipotent(m));
    CHECK(serre_symmetrizes(m));
    // Not unipotent of lower order: (T - I)^m != 0.
    CHECK_FALSE(is_zero(power(subtract(twist_matrix(m, -m - 1), identity_matrix(n)), m)));
    CHECK(determinant(serre_matrix(m)) == ((m * n) % 2 ? -1 : 1));
  }
}

TEST_CASE("K-theoretic mutations") {
  const KClass o = line_class(1, 0), o1 = line_class(1, 1);
  CHECK(k_mutate(o, o1, MutationSide::left) == line_class(1, -1));
  CHECK(k_mutate(o, o1, MutationSide::right) == line_class(1, 2));
  const KClass u = line_class(2, 0), v = line_class(2, 1);
  CHECK(euler_form(u, k_mutate(u, v, MutationSide::left)) == 0);
  CHECK(euler_form(k_mutate(u, v, MutationSide::right), v) == 0);
}
