#pragma once

#include "brp/scalar.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace brp {

using Label = int;

/// Non-planar rooted tree with integer vertex labels.
///
/// Children are kept sorted under the tree total order, so structurally equal
/// trees compare equal and render identically. The order is: degree, then
/// root label, then lexicographic comparison of the sorted child sequences.
class Tree {
 public:
  explicit Tree(Label root, std::vector<Tree> children = {});

  Label root_label() const noexcept { return label_; }
  const std::vector<Tree>& children() const noexcept { return children_; }
  int degree() const noexcept { return degree_; }
  Label max_label() const noexcept;

  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);
  friend bool operator==(const Tree& a, const Tree& b) { return (a <=> b) == 0; }

 private:
  Label label_;
  int degree_;
  std::vector<Tree> children_;
};

/// Commutative monomial of trees. The empty forest is the unit.
class Forest {
 public:
  Forest() = default;
  Forest(Tree t);  // NOLINT: a tree is a one-element forest
  explicit Forest(std::vector<Tree> trees);

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return trees_.size(); }
  bool empty() const noexcept { return trees_.empty(); }
  Label max_label() const noexcept;

  /// Commutative forest product (disjoint union).
  friend Forest operator*(const Forest& a, const Forest& b);

  friend std::strong_ordering operator<=>(const Forest& a, const Forest& b);
  friend bool operator==(const Forest& a, const Forest& b) { return (a <=> b) == 0; }

 private:
  std::vector<Tree> trees_;
  int degree_ = 0;
};

/// forest := tree (WS tree)*;  tree := label [ '(' tree (',' tree)* ')' ].
/// "()" denotes the empty forest. Labels must lie in 1..d.
Forest parse_forest(std::string_view text, int d);
Tree parse_tree(std::string_view text, int d);

std::string render(const Tree& t);
std::string render(const Forest& f);

/// Order of the label-preserving vertex automorphism group.
BigInt symmetry_factor(const Tree& t);
BigInt symmetry_factor(const Forest& f);

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

/// All trees of degree exactly n with labels in 1..d, in ascending tree order.
std::vector<Tree> enumerate_trees(int n, int d, std::size_t cap = default_enumeration_cap);
/// All forests of degree exactly n (n = 0 gives the unit alone), ascending.
std::vector<Forest> enumerate_forests(int n, int d, std::size_t cap = default_enumeration_cap);
/// All forests of degree 0..n, grouped by degree.
std::vector<Forest> forests_up_to(int n, int d, std::size_t cap = default_enumeration_cap);

/// Counts by the multiset (Euler transform) recurrence, independent of enumeration.
BigInt count_trees(int n, int d);
BigInt count_forests(int n, int d);

/// Tree t with every vertex label a replaced by map[a - 1].
Tree relabel(const Tree& t, const std::vector<Label>& map);
Forest relabel(const Forest& f, const std::vector<Label>& map);

/// The tree with root label a and the trees of `children` as its children.
Tree graft_root(Label a, const Forest& children);

}  // namespace brp
