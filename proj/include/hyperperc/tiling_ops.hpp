#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/halfplane.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// |dV0| / |V0| for each set, where dV0 counts edges with exactly one
/// endpoint in V0. Sets must be nonempty, connected and stay below the
/// outermost layer (so every member has its full degree); a set touching the
/// outermost layer raises TruncatedBoundary, an empty or disconnected one
/// InvalidInput.
std::vector<double> isoperimetric_ratios(const TilingGraph& g, std::span<const std::vector<VertexId>> sets);

/// Random connected vertex sets of sizes in [1, max_size], grown from a
/// random interior start by repeatedly absorbing a uniformly chosen
/// frontier vertex, never entering the outermost layer.
std::vector<std::vector<VertexId>> random_connected_sets(const TilingGraph& g, std::size_t count,
                                                         std::size_t max_size, std::uint64_t seed);

/// Vertices of layer <= r.
std::vector<VertexId> combinatorial_ball(const TilingGraph& g, int r);

/// Vertices whose disc position lies in the closed halfplane, up to
/// kSideTolerance.
std::vector<VertexId> halfplane_vertices(const TilingGraph& g, const Halfplane& h);

}  // namespace hyperperc
