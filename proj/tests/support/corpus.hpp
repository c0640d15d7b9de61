#pragma once

// Seeded generators of small test objects shared by the unit and
// acceptance suites.

#include "dbcoh/mutate.hpp"

#include <random>
#include <string>
#include <vector>

namespace dbcoh::testing {

using Rng = std::mt19937_64;

/// Homogeneous form of degree d with a few random monomials, coefficients
/// in [-2, 2]; never zero.
Poly random_form(int m, int d, Rng& rng);

/// O(d)[k] summed 1 or 2 times.
DObject random_line_sum(int m, Rng& rng, int twist_bound = 3);
/// O(a)^p -> O(b)^q with random entries, twist gap 1 or 2.
DObject random_two_term(int m, Rng& rng, int twist_bound = 3);
/// Koszul complex of 1..m+1 random linear forms, twisted.
DObject random_koszul(int m, Rng& rng);
/// Mix of the above with at most 3 terms and twists in [-bound, bound].
DObject random_small(int m, Rng& rng, int twist_bound = 3);

/// 0 -> O -> O(1)^{m+1} given by the coordinates: T(-1) in degree 0.
DObject euler_cone(int m);

struct Labeled {
  std::string label;
  DObject object;
};

/// Shifted line bundles and sums, Euler-type cones, point complexes and
/// random small complexes.
std::vector<Labeled> local_freeness_corpus(int m, std::size_t random_count, std::uint64_t seed);

}  // namespace dbcoh::testing
