#include "hyperperc/binary_tree.hpp"

#include <algorithm>
#include <string>

namespace hyperperc {

TilingGraph EmbeddedTree::as_graph(const TilingGraph& host) const {
  std::vector<VertexId> local(host.vertex_count(), kNoIndex);
  std::vector<Complex> positions;
  std::vector<Edge> edges;
  auto id_of = [&](VertexId v) {
    if (local[v] == kNoIndex) {
      local[v] = static_cast<VertexId>(positions.size());
      positions.push_back(host.position(v));
    }
    return local[v];
  };
  for (const auto& path : paths) {
    VertexId prev = id_of(path.front());
    for (std::size_t i = 1; i < path.size(); ++i) {
      VertexId cur = id_of(path[i]);
      edges.push_back({prev, cur});
      prev = cur;
    }
  }
  const std::size_t n = positions.size();
  return TilingGraph::from_edges(n, edges, {}, std::move(positions));
}

EmbeddedTree embed_binary_tree(const TilingGraph& g, int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidInput, "tree depth must be nonnegative");
  if (g.vertex_count() == 0 || g.radius() < depth) {
    throw Error(ErrorKind::PatchTooLarge, "binary tree of depth " + std::to_string(depth) +
                                              " needs a patch of radius >= " + std::to_string(depth));
  }
  const std::size_t nodes = (std::size_t{2} << depth) - 1;
  EmbeddedTree tree;
  tree.depth = depth;
  tree.branch.assign(nodes, kNoIndex);
  tree.paths.assign(nodes, {});
  tree.branch[0] = 0;
  tree.paths[0] = {0};

  std::vector<char> used(g.vertex_count(), 0);
  used[0] = 1;
  auto back_degree = [&](VertexId w) {
    int n = 0;
    for (VertexId u : g.neighbours(w)) n += g.layer(u) < g.layer(w);
    return n;
  };

  for (std::size_t node = 0; 2 * node + 2 < nodes; ++node) {
    VertexId v = tree.branch[node];
    auto nb = g.neighbours(v);
    const std::size_t deg = nb.size();
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < deg; ++i) {
      if (g.layer(nb[i]) == g.layer(v) + 1 && !used[nb[i]]) slots.push_back(i);
    }
    // Best pair: fewest shared children first, then widest rotation gap.
    std::size_t best_a = 0, best_b = 0;
    int best_score = -1;
    for (std::size_t x = 0; x < slots.size(); ++x) {
      for (std::size_t y = x + 1; y < slots.size(); ++y) {
        std::size_t gap = slots[y] - slots[x];
        gap = std::min(gap, deg - gap);
        int exclusive = (back_degree(nb[slots[x]]) == 1) + (back_degree(nb[slots[y]]) == 1);
        int score = exclusive * 64 + static_cast<int>(gap);
        if (score > best_score) {
          best_score = score;
          best_a = slots[x];
          best_b = slots[y];
        }
      }
    }
    if (best_score < 0) {
      throw Error(ErrorKind::InvalidInput, "tree embedding stuck at vertex " + std::to_string(v));
    }
    for (auto [child, slot] : {std::pair{2 * node + 1, best_a}, std::pair{2 * node + 2, best_b}}) {
      VertexId w = nb[slot];
      used[w] = 1;
      tree.branch[child] = w;
      tree.paths[child] = {v, w};
    }
  }
  return tree;
}

TilingGraph complete_binary_tree(int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidInput, "tree depth must be nonnegative");
  const std::size_t nodes = (std::size_t{2} << depth) - 1;
  std::vector<Edge> edges;
  edges.reserve(nodes - 1);
  std::vector<int> layers(nodes, 0);
  for (std::size_t i = 1; i < nodes; ++i) {
    edges.push_back({static_cast<VertexId>((i - 1) / 2), static_cast<VertexId>(i)});
    layers[i] = layers[(i - 1) / 2] + 1;
  }
  return TilingGraph::from_edges(nodes, edges, std::move(layers));
}

}  // namespace hyperperc
