#pragma once

#include "brp/lincomb.hpp"
#include "brp/tree.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace brp {

// Connes-Kreimer coproduct. Orientation: pruned branches in the left slot,
// the root-containing trunk in the right slot.

/// Recursive route: multiplicative over forest members, and on a tree
/// B+_a(t1...tk) -> t (x) 1 + (id (x) B+_a)(D t1 ... D tk).
TensorLinCombQ ck_coproduct(const Forest& f);

/// Direct enumeration of admissible cuts. A virtual edge above every root lets
/// the full cut of a member tree be treated like any other edge.
TensorLinCombQ ck_coproduct_cuts(const Forest& f);

// Grossman-Larson product and coproduct on forests (the extra GL root removed).

/// F * G: sum over maps from the trees of F to V(G) u {free}; trees sent to a
/// vertex are grafted there, free trees stay forest members.
LinCombQ gl_product(const Forest& a, const Forest& b);
LinCombQ gl_product(const LinCombQ& a, const LinCombQ& b);

/// delta(u1...uk) = sum over subsets S of tree occurrences of forest(S) (x) forest(S^c).
TensorLinCombQ gl_coproduct(const Forest& f);

struct DualityDiscrepancy {
  Forest rho;
  Forest left, right;
  Rational coproduct_coeff;  // from ck_coproduct
  Rational dual_coeff;       // sigma(rho)/(sigma(l) sigma(r)) <l * r, rho>
};

struct DualityReport {
  std::size_t forests_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<DualityDiscrepancy> discrepancies;
  bool holds() const noexcept { return discrepancies.empty(); }
};

/// Checks D rho = sum sigma(rho)/(sigma(r1)sigma(r2)) <r1 * r2, rho> r1 (x) r2 exactly,
/// over all pairs with |r1| + |r2| = |rho| labeled in 1..max label of rho.
DualityReport verify_duality(const Forest& rho);

/// Same identity for every forest of degree 1..n over labels 1..d. Each GL
/// product is computed once and scattered into all forests it touches.
DualityReport verify_duality_up_to(int n, int d);

/// l_1..l_maxdeg from L(x) = 1 - 1/H(x), H the forest Hilbert series. Exact integers.
std::vector<BigInt> free_generator_counts(int maxdeg, int d);

struct GeneratorTable {
  int d = 0;
  /// counts[n-1] = l_n.
  std::vector<BigInt> counts;
  /// generators[n-1] = the chosen degree-n generator trees, ascending.
  std::vector<std::vector<Tree>> generators;

  int max_degree() const noexcept { return static_cast<int>(counts.size()); }
  /// Generators of degree <= maxdeg, ascending by degree then tree order.
  std::vector<Tree> alphabet(int maxdeg) const;
};

inline constexpr std::size_t default_dimension_cap = 5000;

/// Degreewise greedy basis extension: in degree n take the exact span of all
/// GL products of two or more lower-degree generators, then add degree-n trees
/// in canonical order whenever they are independent. Throws CheckFailure when the
/// number of added trees disagrees with free_generator_counts.
GeneratorTable extract_free_generators(int maxdeg, int d,
                                       std::size_t dimension_cap = default_dimension_cap);

struct WordCountReport {
  /// T_0..T_n.
  std::vector<BigInt> counts;
  int kp = 1;
  int d = 1;
  /// bound_holds[k] is T_k <= (K_p d)^k.
  std::vector<bool> bound_holds;
  bool all_bounds_hold() const;
};

/// Smallest integer K >= 1 with sum_i l_i K^{-i} <= 1.
int smallest_kp(const std::vector<BigInt>& unlabeled_counts);

/// T_k = sum_{i=1..[p]} l_i d^i T_{k-i}, T_0 = 1, for k = 0..n, with l the
/// unlabeled generator counts of degree 1..[p].
WordCountReport word_counts(const std::vector<BigInt>& unlabeled_counts, int d, int n);

}  // namespace brp
