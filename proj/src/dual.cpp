#include "hyperperc/dual.hpp"

#include <algorithm>

namespace hyperperc {

DualPatch dual_graph(const TilingGraph& g) {
  const std::size_t faces = g.face_count();
  if (faces == 0) throw Error(ErrorKind::EmptyDual, "patch has no closed face");

  // Each directed face edge (face[i] -> face[i+1]) has its face on the left.
  // Index the two sides of every primal edge.
  const std::size_t m = g.edge_count();
  std::vector<FaceId> left(m, kNoIndex);   // face seeing the edge as u -> v
  std::vector<FaceId> right(m, kNoIndex);  // face seeing it as v -> u
  for (FaceId f = 0; f < faces; ++f) {
    auto vs = g.face(f);
    auto es = g.face_edges(f);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Edge& e = g.edge(es[i]);
      (vs[i] == e.u ? left : right)[es[i]] = f;
    }
  }

  DualPatch d;
  d.primal_to_dual.assign(m, kNoIndex);
  TilingGraph::Parts parts;
  parts.symbol = g.symbol().p ? g.symbol().dual() : SchlafliSymbol{};
  parts.rotation.resize(faces);
  for (FaceId f = 0; f < faces; ++f) {
    auto vs = g.face(f);
    auto es = g.face_edges(f);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      EdgeId e = es[i];
      FaceId other = left[e] == f ? right[e] : left[e];
      if (other != kNoIndex) parts.rotation[f].push_back(other);
    }
  }

  // Dual faces around primal vertices whose incident wedges are all closed.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbours(v);
    auto inc = g.incident_edges(v);
    if (static_cast<int>(nb.size()) != g.symbol().q) continue;
    std::vector<VertexId> cycle;
    for (std::size_t j = 0; j < nb.size(); ++j) {
      const Edge& e = g.edge(inc[j]);
      FaceId f = e.u == v ? left[inc[j]] : right[inc[j]];
      if (f == kNoIndex) break;
      cycle.push_back(f);
    }
    if (cycle.size() != nb.size()) continue;
    parts.faces.push_back(std::move(cycle));
    d.face_to_primal_vertex.push_back(v);
  }

  // BFS layers from face 0.
  parts.layer.assign(faces, -1);
  std::vector<FaceId> queue{0};
  parts.layer[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    FaceId f = queue[head];
    for (FaceId h : parts.rotation[f]) {
      if (parts.layer[h] < 0) {
        parts.layer[h] = parts.layer[f] + 1;
        queue.push_back(h);
      }
    }
  }
  parts.radius = *std::max_element(parts.layer.begin(), parts.layer.end());
  parts.position.assign(g.face_centers().begin(), g.face_centers().end());
  for (VertexId v : d.face_to_primal_vertex) parts.face_centers.push_back(g.position(v));
  d.graph = TilingGraph::from_parts(std::move(parts));

  d.dual_to_primal.assign(d.graph.edge_count(), kNoIndex);
  for (EdgeId e = 0; e < m; ++e) {
    if (left[e] == kNoIndex || right[e] == kNoIndex) continue;
    EdgeId de = d.graph.find_edge(left[e], right[e]);
    d.primal_to_dual[e] = de;
    d.dual_to_primal[de] = e;
  }
  return d;
}

}  // namespace hyperperc
