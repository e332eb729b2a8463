#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperperc/error.hpp"
#include "hyperperc/mobius.hpp"

namespace hyperperc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr std::uint32_t kNoIndex = 0xffffffffu;

/// {p,q}: regular p-gons, q around each vertex.
struct SchlafliSymbol {
  int p = 0;
  int q = 0;

  /// (p-2)(q-2) > 4, i.e. 1/p + 1/q < 1/2.
  bool is_hyperbolic() const { return p >= 3 && q >= 3 && (p - 2) * (q - 2) > 4; }

  /// Throws InvalidSymbol for Euclidean or spherical symbols.
  void validate() const;

  SchlafliSymbol dual() const { return {q, p}; }

  std::string to_string() const { return "{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

  friend bool operator==(const SchlafliSymbol&, const SchlafliSymbol&) = default;
};

/// Hyperbolic edge length L of the regular tiling,
/// cosh L = (cos^2(pi/q) + cos(2 pi/p)) / sin^2(pi/q).
double edge_length(SchlafliSymbol s);

/// Distance from a vertex to the centre of an incident face,
/// cosh r = cot(pi/p) cot(pi/q).
double circumradius(SchlafliSymbol s);

/// Disc radius tanh(d/2) of a point at hyperbolic distance d from the origin.
inline double disc_radius(double hyperbolic_distance) { return std::tanh(hyperbolic_distance / 2); }

struct Edge {
  VertexId u;
  VertexId v;
};

/// Immutable finite patch of a planar graph with a root vertex (index 0),
/// BFS layers, disc coordinates, a rotation system (neighbours in
/// counterclockwise order) and the faces closed inside the patch.
///
/// Generated tilings satisfy: vertices are ordered by layer, layer equals
/// graph distance from vertex 0, every vertex below the outermost layer has
/// degree q, every face is a counterclockwise p-cycle.
class TilingGraph {
 public:
  /// Raw parts; `from_parts` derives edges and half-edge maps from them.
  struct Parts {
    SchlafliSymbol symbol;
    int radius = 0;
    std::vector<int> layer;
    std::vector<Complex> position;
    /// Neighbours of each vertex, counterclockwise where meaningful.
    std::vector<std::vector<VertexId>> rotation;
    /// Closed faces as counterclockwise vertex cycles.
    std::vector<std::vector<VertexId>> faces;
    /// Optional face centres; defaults to the mean of the face's vertices.
    std::vector<Complex> face_centers;
  };

  TilingGraph() = default;

  /// Validates simplicity and symmetry of `rotation` and that every face
  /// cycle uses existing edges; throws InvalidInput otherwise. Edges are
  /// numbered in (vertex, rotation) order, first visit from the smaller id.
  static TilingGraph from_parts(Parts parts);

  /// Builds a graph from an edge list; layers become BFS distances from
  /// vertex 0 (unreachable vertices get layer -1) unless given.
  static TilingGraph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                                std::vector<int> layers = {}, std::vector<Complex> positions = {});

  const SchlafliSymbol& symbol() const { return symbol_; }
  int radius() const { return radius_; }

  std::size_t vertex_count() const { return layer_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return face_offset_.empty() ? 0 : face_offset_.size() - 1; }

  int layer(VertexId v) const { return layer_[v]; }
  Complex position(VertexId v) const { return position_[v]; }
  /// Ideal-direction angle of a vertex, arg(z) in [0, 2*pi).
  double angle(VertexId v) const { return wrap_angle(std::arg(position_[v])); }

  std::span<const int> layers() const { return layer_; }
  std::span<const Complex> positions() const { return position_; }

  /// Neighbours in rotation order, and the matching incident edge ids.
  std::span<const VertexId> neighbours(VertexId v) const {
    return {rot_.data() + rot_offset_[v], rot_.data() + rot_offset_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {rot_edge_.data() + rot_offset_[v], rot_edge_.data() + rot_offset_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return rot_offset_[v + 1] - rot_offset_[v]; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  /// Layer tag of an edge: the larger endpoint layer.
  int edge_layer(EdgeId e) const { return std::max(layer_[edges_[e].u], layer_[edges_[e].v]); }

  std::span<const VertexId> face(FaceId f) const {
    return {face_vertices_.data() + face_offset_[f], face_vertices_.data() + face_offset_[f + 1]};
  }
  /// Edge between face(f)[i] and face(f)[i+1].
  std::span<const EdgeId> face_edges(FaceId f) const {
    return {face_edges_.data() + face_offset_[f], face_edges_.data() + face_offset_[f + 1]};
  }

  Complex face_center(FaceId f) const { return face_center_[f]; }
  std::span<const Complex> face_centers() const { return face_center_; }

  /// Edge joining u and v, or kNoIndex.
  EdgeId find_edge(VertexId u, VertexId v) const;

  /// Largest layer present.
  int outer_layer() const { return outer_layer_; }
  /// Vertices of the outermost layer, in index order.
  std::span<const VertexId> outer_vertices() const { return outer_; }
  /// Number of vertices per layer, index = layer.
  std::vector<std::size_t> layer_sizes() const;

  /// Hash of the full serialized content; used as a graph identifier.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const TilingGraph& a, const TilingGraph& b);

 private:
  void finish();

  SchlafliSymbol symbol_;
  int radius_ = 0;
  std::vector<int> layer_;
  std::vector<Complex> position_;
  std::vector<std::size_t> rot_offset_{0};
  std::vector<VertexId> rot_;
  std::vector<EdgeId> rot_edge_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> face_offset_;
  std::vector<VertexId> face_vertices_;
  std::vector<EdgeId> face_edges_;
  std::vector<Complex> face_center_;
  int outer_layer_ = 0;
  std::vector<VertexId> outer_;
  std::uint64_t fingerprint_ = 0;
};

struct GenerateOptions {
  std::size_t max_vertices = 5'000'000;
  /// Also glue every face around the outermost layer before cutting. The
  /// cut is the same induced ball; this only costs memory and exists so
  /// tests can confirm no edge between two outermost vertices is missed.
  bool complete_outer_layer = false;
};

/// Combinatorial ball of radius `radius` around a root vertex of the {p,q}
/// tiling. Grown by gluing p-gons onto the boundary of a disc, completing
/// vertices in BFS order; the induced subgraph on layers <= radius is kept.
TilingGraph generate_tiling(SchlafliSymbol symbol, int radius, const GenerateOptions& options = {});

}  // namespace hyperperc
