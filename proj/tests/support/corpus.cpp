#include "corpus.hpp"

#include <algorithm>

namespace dbcoh::testing {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Poly random_form(int m, int d, Rng& rng) {
  const auto basis = monomial_basis(m, d);
  while (true) {
    std::vector<Poly::Term> terms;
    const int picks = uniform(rng, 1, std::min<int>(3, static_cast<int>(basis.size())));
    std::vector<std::size_t> idx(basis.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::sort(idx.begin(), idx.begin() + picks);
    for (int k = 0; k < picks; ++k) {
      const int c = uniform(rng, -2, 2);
      if (c != 0) terms.emplace_back(basis[idx[static_cast<std::size_t>(k)]], Rational(c));
    }
    if (!terms.empty()) return Poly(d, std::move(terms));
  }
}

DObject random_line_sum(int m, Rng& rng, int twist_bound) {
  DObject e(m);
  const int count = uniform(rng, 1, 2);
  for (int i = 0; i < count; ++i)
    e = direct_sum(e, shift(DObject::line_bundle(m, uniform(rng, -twist_bound, twist_bound)), uniform(rng, -1, 1)));
  return e;
}

DObject random_two_term(int m, Rng& rng, int twist_bound) {
  const int gap = uniform(rng, 1, 2);
  const int a = uniform(rng, -twist_bound, twist_bound - gap);
  const int p = uniform(rng, 1, 2), q = uniform(rng, 1, 2);
  DObject e(m);
  const int t = uniform(rng, -1, 0);
  e.set_term(t, std::vector<int>(static_cast<std::size_t>(p), a));
  e.set_term(t + 1, std::vector<int>(static_cast<std::size_t>(q), a + gap));
  PolyMatrix d(e.term(t + 1), e.term(t));
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < p; ++c)
      if (uniform(rng, 0, 3) != 0) d.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), random_form(m, gap, rng));
  e.set_diff(t, std::move(d));
  return e;
}

DObject random_koszul(int m, Rng& rng) {
  const int k = uniform(rng, 1, m + 1);
  std::vector<Poly> forms;
  for (int i = 0; i < k; ++i) forms.push_back(random_form(m, 1, rng));
  return twist(koszul_complex(m, forms), uniform(rng, 0, 1));
}

DObject random_small(int m, Rng& rng, int twist_bound) {
  switch (uniform(rng, 0, 3)) {
    case 0:
      return random_line_sum(m, rng, twist_bound);
    case 1:
      return random_two_term(m, rng, twist_bound);
    case 2: {
      std::vector<Poly> forms{random_form(m, 1, rng), random_form(m, 1, rng)};
      const DObject k = koszul_complex(m, forms);  // twists -2..0
      return twist(k, uniform(rng, -1, twist_bound));
    }
    default: {
      DObject e = random_two_term(m, rng, twist_bound - 1);
      return direct_sum(e, DObject::line_bundle(m, uniform(rng, -twist_bound, twist_bound), e.min_degree()));
    }
  }
}

DObject euler_cone(int m) {
  DObject e(m);
  e.set_term(-1, {0});
  e.set_term(0, std::vector<int>(static_cast<std::size_t>(m) + 1, 1));
  PolyMatrix d(e.term(0), e.term(-1));
  for (int i = 0; i <= m; ++i) d.set(static_cast<std::size_t>(i), 0, Poly::variable(i));
  e.set_diff(-1, std::move(d));
  return e;
}

std::vector<Labeled> local_freeness_corpus(int m, std::size_t random_count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Labeled> out;
  auto add = [&](std::string l, DObject e) { out.push_back({std::move(l), std::move(e)}); };
  for (int d : {-3, 0, 2})
    for (int k : {-2, 0, 1}) add("O(" + std::to_string(d) + ")[" + std::to_string(k) + "]", shift(DObject::line_bundle(m, d), k));
  add("O+O(1)", direct_sum(DObject::line_bundle(m, 0), DObject::line_bundle(m, 1)));
  add("O(-1)[2]+O(2)[2]", shift(direct_sum(DObject::line_bundle(m, -1), DObject::line_bundle(m, 2)), 2));
  add("O+O[1]", direct_sum(DObject::line_bundle(m, 0), shift(DObject::line_bundle(m, 0), 1)));
  add("O(1)+O[-1]", direct_sum(DObject::line_bundle(m, 1), shift(DObject::line_bundle(m, 0), -1)));
  for (int k : {-1, 0, 2}) add("euler[" + std::to_string(k) + "]", shift(euler_cone(m), k));
  add("euler(2)", twist(euler_cone(m), 2));
  add("dual euler", dual(euler_cone(m)));
  add("euler+O", direct_sum(euler_cone(m), DObject::line_bundle(m, 0)));
  add("euler+O[1]", direct_sum(euler_cone(m), shift(DObject::line_bundle(m, 0), 1)));
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> c;
    for (int j = 0; j <= m; ++j) c.emplace_back(i == j ? 1 : (i > m ? j + 1 : 0));
    add("point " + std::to_string(i), point_complex(RPoint(c)));
  }
  for (std::size_t i = 0; i < random_count; ++i) add("random " + std::to_string(i), random_small(m, rng));
  return out;
}

}  // namespace dbcoh::testing
