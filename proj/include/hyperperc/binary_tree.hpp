#pragma once

#include <vector>

#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// A complete binary tree of some depth, embedded in a host graph. Tree
/// nodes are numbered in heap order: node 0 is the root, node i has
/// children 2i+1 and 2i+2.
struct EmbeddedTree {
  int depth = 0;
  /// Host vertex of each tree node.
  std::vector<VertexId> branch;
  /// paths[i] for i >= 1: host path from branch[parent(i)] to branch[i],
  /// both ends included. paths[0] is just {branch[0]}.
  std::vector<std::vector<VertexId>> paths;

  /// The embedded subgraph on its own, vertices renumbered in order of
  /// first appearance along the heap-ordered paths, host positions kept.
  TilingGraph as_graph(const TilingGraph& host) const;
};

/// Embeds the complete binary tree of the given depth into a generated
/// patch, rooted at vertex 0. Level k of the tree sits on layer k: each
/// branch vertex keeps two of its unused forward neighbours (one layer
/// further out), preferring neighbours with a single backward edge and,
/// among those, the pair furthest apart in the rotation. Throws
/// PatchTooLarge when the patch radius is below `depth` (the message names
/// the radius needed) and InvalidInput if the greedy choice gets stuck.
EmbeddedTree embed_binary_tree(const TilingGraph& g, int depth);

/// The abstract complete binary tree of the given depth in heap order;
/// layers are tree depths, so the leaves form the outermost layer.
TilingGraph complete_binary_tree(int depth);

}  // namespace hyperperc
