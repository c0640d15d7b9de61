#pragma once

// K_0(P^m) = Z[t]/(1-t)^{m+1} with t = [O(1)], in the basis [O], ..., [O(m)].

#include "dbcoh/dobject.hpp"

#include <vector>

namespace dbcoh {

using IntMatrix = std::vector<std::vector<Integer>>;

struct KClass {
  std::vector<Integer> coeffs;  ///< length m + 1

  int m() const { return static_cast<int>(coeffs.size()) - 1; }
  static KClass zero(int m) { return {std::vector<Integer>(static_cast<std::size_t>(m) + 1)}; }
  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(const Integer& c, KClass a);
  friend bool operator==(const KClass&, const KClass&) = default;
};

/// [O(d)] reduced to the basis.
KClass line_class(int m, int d);
/// Alternating sum of the term classes.
KClass class_of(const DObject& e);
/// Ring product (class of the tensor product).
KClass class_product(const KClass& u, const KClass& v);

/// G[a][b] = chi(O(a), O(b)) = C(b - a + m, m) as a polynomial in b - a.
IntMatrix euler_matrix(int m);
Integer euler_form(const KClass& u, const KClass& v);

enum class MutationSide { left, right };
/// left: chi(u, v) u - v; right: chi(u, v) v - u.
KClass k_mutate(const KClass& u, const KClass& v, MutationSide side);

/// Matrix of - (x) O(k); column j is the class of O(j + k).
IntMatrix twist_matrix(int m, int k);
/// (-1)^m T_{-m-1}, the action of the Serre functor.
IntMatrix serre_matrix(int m);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix subtract(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
IntMatrix power(const IntMatrix& a, int k);
bool is_zero(const IntMatrix& a);
Integer determinant(const IntMatrix& a);

/// chi(E_i, E_j) for the given classes.
IntMatrix gram_matrix(const std::vector<KClass>& classes);
bool is_upper_unitriangular(const IntMatrix& g);
/// The classes form a Z-basis of K_0.
bool is_k0_basis(const std::vector<KClass>& classes);

/// (T_{-m-1} - I)^{m+1} = 0.
bool canonical_twist_unipotent(int m);
/// G^T = G S, i.e. chi(u, v) = chi(v, S u) for all u, v.
bool serre_symmetrizes(int m);

}  // namespace dbcoh
