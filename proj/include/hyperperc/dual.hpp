#pragma once

#include <vector>

#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// Dual over the closed faces of a patch. Dual vertex f is primal face f;
/// two dual vertices are adjacent iff their faces share a primal edge.
struct DualPatch {
  TilingGraph graph;
  /// Primal edge -> dual edge; kNoIndex for edges not shared by two faces.
  std::vector<EdgeId> primal_to_dual;
  /// Dual edge -> the primal edge it crosses.
  std::vector<EdgeId> dual_to_primal;
  /// Dual face -> primal interior vertex it surrounds.
  std::vector<VertexId> face_to_primal_vertex;
};

/// Builds the dual of the closed faces of `g`. Dual layers are BFS distances
/// from the face containing the root (face 0 of a generated tiling); dual
/// vertices sit at the face centres; dual faces are the cycles of faces
/// around primal vertices all of whose incident faces are closed. Throws
/// EmptyDual when `g` has no closed face.
DualPatch dual_graph(const TilingGraph& g);

}  // namespace hyperperc
