#include "hyperperc/tiling_ops.hpp"

#include <algorithm>
#include <random>

namespace hyperperc {

std::vector<double> isoperimetric_ratios(const TilingGraph& g, std::span<const std::vector<VertexId>> sets) {
  std::vector<double> ratios;
  ratios.reserve(sets.size());
  // Stamped membership: in_set[v] == stamp means v is in the current set.
  std::vector<std::uint32_t> in_set(g.vertex_count(), 0);
  std::vector<std::uint32_t> visited(g.vertex_count(), 0);
  std::uint32_t stamp = 0;
  std::vector<VertexId> queue;
  for (const auto& set : sets) {
    if (set.empty()) throw Error(ErrorKind::InvalidInput, "isoperimetric set is empty");
    ++stamp;
    std::size_t distinct = 0;
    for (VertexId v : set) {
      if (v >= g.vertex_count()) throw Error(ErrorKind::InvalidInput, "vertex out of range");
      if (g.layer(v) >= g.radius()) {
        throw Error(ErrorKind::TruncatedBoundary,
                    "vertex " + std::to_string(v) + " lies on the outermost layer " + std::to_string(g.radius()));
      }
      if (in_set[v] != stamp) {
        in_set[v] = stamp;
        ++distinct;
      }
    }
    queue.assign(1, set.front());
    visited[set.front()] = stamp;
    std::size_t boundary = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : g.neighbours(queue[head])) {
        if (in_set[w] != stamp) {
          ++boundary;
        } else if (visited[w] != stamp) {
          visited[w] = stamp;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != distinct) throw Error(ErrorKind::InvalidInput, "isoperimetric set is not connected");
    ratios.push_back(static_cast<double>(boundary) / static_cast<double>(distinct));
  }
  return ratios;
}

std::vector<std::vector<VertexId>> random_connected_sets(const TilingGraph& g, std::size_t count,
                                                         std::size_t max_size, std::uint64_t seed) {
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.layer(v) < g.radius()) interior.push_back(v);
  }
  if (interior.empty() || max_size == 0) return {};
  std::mt19937_64 rng(seed);
  std::vector<std::vector<VertexId>> sets;
  sets.reserve(count);
  std::vector<std::uint32_t> mark(g.vertex_count(), 0);
  std::uint32_t stamp = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    ++stamp;
    VertexId start = interior[std::uniform_int_distribution<std::size_t>(0, interior.size() - 1)(rng)];
    std::vector<VertexId> set{start};
    std::vector<VertexId> frontier;
    mark[start] = stamp;
    auto absorb_neighbours = [&](VertexId v) {
      for (VertexId w : g.neighbours(v)) {
        if (mark[w] != stamp && g.layer(w) < g.radius()) {
          mark[w] = stamp;
          frontier.push_back(w);
        }
      }
    };
    absorb_neighbours(start);
    while (set.size() < target && !frontier.empty()) {
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
      VertexId v = frontier[k];
      frontier[k] = frontier.back();
      frontier.pop_back();
      set.push_back(v);
      absorb_neighbours(v);
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<VertexId> combinatorial_ball(const TilingGraph& g, int r) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.layer(v) >= 0 && g.layer(v) <= r) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> halfplane_vertices(const TilingGraph& g, const Halfplane& h) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(g.position(v))) out.push_back(v);
  }
  return out;
}

}  // namespace hyperperc
