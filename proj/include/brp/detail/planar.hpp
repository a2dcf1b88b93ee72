#pragma once

#include "brp/tree.hpp"

#include <vector>

namespace brp::detail {

/// Mutable flattened forest: one entry per vertex, parent == -1 marks a root.
/// Used wherever vertices must be addressed individually (grafting, cuts,
/// automorphism counting).
struct FlatForest {
  std::vector<Label> label;
  std::vector<int> parent;

  static FlatForest from(const Forest& f);

  int size() const noexcept { return static_cast<int>(label.size()); }

  /// Appends a copy of t below `parent_vertex` (or as a new root when -1).
  /// Returns the index of the copied root.
  int append(const Tree& t, int parent_vertex);

  /// Canonical forest over all vertices.
  Forest canonical() const;

  /// Canonical forest induced on the vertices with keep[v]; a kept vertex whose
  /// parent is dropped becomes a root.
  Forest canonical(const std::vector<bool>& keep) const;
};

}  // namespace brp::detail
