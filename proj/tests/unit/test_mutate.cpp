#include "dbcoh/mutate.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace dbcoh;
using dbcoh::testing::Rng;

namespace {

DObject line(int m, int d, int t = 0) { return DObject::line_bundle(m, d, t); }

bool same_objects(const Collection& a, const Collection& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!iso_test(a.objects[i], b.objects[i]).accepted()) return false;
  return true;
}

BraidWord word(std::initializer_list<std::pair<int, int>> letters) {
  BraidWord w;
  for (const auto& [i, v] : letters) w.letters.push_back({BraidLetter::Kind::sigma, i, v});
  return w;
}

bool has_location(const CheckReport& r, const std::string& loc) {
  for (const auto& d : r.details)
    if (d.location == loc) return true;
  return false;
}

}  // namespace

TEST_CASE("Hom complex differential squares to zero") {
  Rng rng(51);
  for (int m = 1; m <= 2; ++m)
    for (int i = 0; i < 15; ++i) {
      const DObject f = dbcoh::testing::random_small(m, rng, 2);
      const DObject e = hom_source_model(dbcoh::testing::random_small(m, rng, 2), f);
      if (e.is_zero() || f.is_zero()) continue;
      const HomComplex h(e, f);
      for (int k = h.lo(); k < h.hi(); ++k) CHECK((h.differential(k + 1) * h.differential(k)).is_zero());
    }
  CHECK_THROWS_AS(HomComplex(line(2, 3), line(2, 0)), MathError);
}

TEST_CASE("chain-level Hom bases consist of chain maps") {
  const HomBasis b = hom_chain_basis(line(1, 0), line(1, 1), 0);
  CHECK(b.dim() == 2);
  const DObject k = point_complex(RPoint({1, 0, 0}));
  const HomBasis pk = hom_chain_basis(line(2, 0), k, 0);
  CHECK(pk.dim() == 1);
  for (const auto& f : pk.maps) CHECK_FALSE(chain_map_defect(f, pk.source, k));
  CHECK(hom_chain_basis(line(2, 0), line(2, 0), 1).dim() == 0);
}

TEST_CASE("mutations of line bundles") {
  // On P^1: 0 -> O(-1) -> O^2 -> O(1) -> 0 and 0 -> O -> O(1)^2 -> O(2) -> 0.
  CHECK(iso_test(left_mutation(line(1, 0), line(1, 1)), line(1, -1)).accepted());
  CHECK(iso_test(right_mutation(line(1, 0), line(1, 1)), line(1, 2)).accepted());
  // On P^2 the mutations are rank-2 bundles: Omega(1) and T(-1).
  const DObject l = left_mutation(line(2, 0), line(2, 1));
  const DObject r = right_mutation(line(2, 0), line(2, 1));
  const auto bl = is_shifted_bundle(l), br = is_shifted_bundle(r);
  CHECK(bl.yes);
  CHECK(bl.rank == 2);
  CHECK(bl.shift == 0);
  CHECK(br.yes);
  CHECK(br.rank == 2);
  CHECK(iso_test(r, dbcoh::testing::euler_cone(2)).accepted());
  CHECK(class_of(l) == k_mutate(line_class(2, 0), line_class(2, 1), MutationSide::left));
  CHECK(class_of(r) == k_mutate(line_class(2, 0), line_class(2, 1), MutationSide::right));
}

TEST_CASE("mutations of an orthogonal pair are shifts") {
  // Hom^*(O(1), O) = 0 on P^2.
  const DObject a = line(2, 1), b = line(2, 0);
  CHECK(iso_test(left_mutation(a, b), shift(b, -1)).accepted());
  CHECK(iso_test(right_mutation(a, b), shift(a, 1)).accepted());
}

TEST_CASE("mutated objects are left and right orthogonal") {
  for (int m = 1; m <= 3; ++m) {
    const DObject a = line(m, 0), b = line(m, 1);
    CHECK(hom_total(a, left_mutation(a, b)).is_zero());
    CHECK(hom_total(right_mutation(a, b), b).is_zero());
  }
}

TEST_CASE("check_collection") {
  for (int m = 1; m <= 3; ++m) {
    const auto v = check_collection(beilinson(m));
    CHECK(v.exceptional);
    CHECK(v.strict);
    CHECK(v.k0_basis);
    CHECK(v.report.passed());
    CHECK(v.homs.at({0, m}).entries == std::map<int, std::size_t>{{0, binomial(2 * m, m)}});
  }
  const auto ns = check_collection({1, {line(1, 0), line(1, 1, -1)}});
  CHECK(ns.exceptional);
  CHECK_FALSE(ns.strict);
  CHECK(has_location(ns.report, "(1,2)"));
  const auto bad = check_collection({1, {line(1, 1), line(1, 0)}});
  CHECK_FALSE(bad.exceptional);
  CHECK_FALSE(bad.report.passed());
  CHECK(has_location(bad.report, "(2,1)"));
  const auto dup = check_collection({2, {line(2, 0), direct_sum(line(2, 1), line(2, 1))}});
  CHECK_FALSE(dup.objects_exceptional);
  CHECK(has_location(dup.report, "(2,2)"));
  const auto small = check_collection({2, {line(2, 0), line(2, 1)}});
  CHECK(small.exceptional);
  CHECK_FALSE(small.k0_basis);
}

TEST_CASE("braid group action") {
  const Collection b2 = beilinson(2);
  const Collection once = apply_braid(b2, word({{1, 1}}));
  CHECK(iso_test(once.objects[1], b2.objects[0]).accepted());
  CHECK(check_collection(once).exceptional);
  // sigma sigma^-1 = 1.
  CHECK(same_objects(apply_braid(b2, word({{2, 1}, {2, -1}})), b2));
  CHECK(same_objects(apply_braid(b2, word({{1, -1}, {1, 1}})), b2));
  // Braid relation.
  CHECK(same_objects(apply_braid(b2, word({{1, 1}, {2, 1}, {1, 1}})), apply_braid(b2, word({{2, 1}, {1, 1}, {2, 1}}))));
  // Shift letters.
  BraidWord sh;
  sh.letters.push_back({BraidLetter::Kind::shift, 2, 3});
  CHECK(apply_braid(b2, sh).objects[1] == shift(b2.objects[1], 3));
  CHECK_THROWS_AS(apply_braid(b2, word({{3, 1}})), MathError);
  CHECK_THROWS_AS(apply_braid(b2, word({{1, 2}})), MathError);
  CHECK_THROWS_AS(apply_braid({1, {line(1, 1), line(1, 0)}}, word({{1, 1}})), MathError);
  // K_0 equivariance.
  const Collection w = apply_braid(b2, word({{1, 1}, {2, -1}}));
  const auto g = gram_matrix({class_of(w.objects[0]), class_of(w.objects[1]), class_of(w.objects[2])});
  CHECK(is_upper_unitriangular(g));
}

TEST_CASE("random braid words are seeded") {
  const BraidWord a = random_braid_word(3, 6, 9), b = random_braid_word(3, 6, 9);
  REQUIRE(a.letters.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.letters[i].index == b.letters[i].index);
    CHECK(a.letters[i].value == b.letters[i].value);
    CHECK(a.letters[i].index >= 1);
    CHECK(a.letters[i].index <= 2);
  }
}

TEST_CASE("helices of line bundles") {
  for (int m = 1; m <= 2; ++m) {
    const Helix h = helix_extend(beilinson(m), -m, 2 * (m + 1));
    for (int i = h.lo(); i <= h.hi(); ++i) CHECK(iso_test(h.at(i), line(m, i - 1)).accepted());
    CHECK(helix_serre_check(h).passed());
    CHECK(proposition_sweep(h, h.lo(), h.hi()).passed());
  }
  CHECK_THROWS_AS(helix_extend(beilinson(1), 0, 3).at(7), MathError);
}

TEST_CASE("sweep refuses a non-strict base") {
  const Helix h = helix_extend({1, {line(1, 0), line(1, 1, -1)}}, 0, 3);
  CHECK_FALSE(proposition_sweep(h, 0, 3).passed());
}

TEST_CASE("theorem verdicts") {
  const auto v = verify_theorem(beilinson(2));
  CHECK(v.hypothesis);
  CHECK(v.conclusion);
  CHECK(v.report.verdict == Verdict::probabilistic_pass);
  const auto nb = verify_theorem({1, {line(1, 0), line(1, 1, -1)}});
  CHECK_FALSE(nb.hypothesis);
  CHECK_FALSE(nb.report.passed());
  const auto braided = verify_theorem(apply_braid(beilinson(2), word({{1, 1}, {2, -1}})));
  CHECK(braided.hypothesis);
  CHECK(braided.conclusion);
}

TEST_CASE("corollary detection") {
  const auto l = corollary_detect(line(2, 3, 1));
  CHECK(l.shifted_bundle);
  CHECK(l.agrees);
  const auto p = corollary_detect(point_complex(RPoint({1, 0, 0})));
  CHECK_FALSE(p.shifted_bundle);
  CHECK(p.agrees);
  CHECK(p.self_homs.at(1) == 2);
  const auto t = corollary_detect(dbcoh::testing::euler_cone(2));
  CHECK(t.shifted_bundle);
  CHECK(t.agrees);
}

TEST_CASE("heart detection") {
  const Collection probes = beilinson(2);
  CHECK(heart_detect(line(2, 0), probes).in_D_ge0);
  CHECK_FALSE(heart_detect(line(2, 0, -1), probes).in_D_ge0);
  CHECK(heart_detect(point_complex(RPoint({1, 2, 3})), probes).matches_profile);
  CHECK(heart_detect(line(2, -4, -1), probes).matches_profile);
}

TEST_CASE("Gram entries of P^2 descendants solve the Markov-type equation") {
  // For a full exceptional collection on P^2 the upper entries (a, b, c)
  // satisfy a^2 + b^2 + c^2 = abc.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Collection c = apply_braid(beilinson(2), random_braid_word(3, 1 + seed % 4, 100 + seed));
    std::vector<KClass> k;
    for (const auto& e : c.objects) k.push_back(class_of(e));
    const IntMatrix g = gram_matrix(k);
    const Integer a = g[0][1], b = g[1][2], cc = g[0][2];
    CHECK(a * a + b * b + cc * cc == a * b * cc);
  }
}
