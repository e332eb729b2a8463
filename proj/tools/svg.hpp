#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>

#include "hyperperc/boundary.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc::cli {

/// Disc-to-canvas map: the unit disc becomes a circle of radius `scale`
/// centred at (center, center), y pointing down.
struct SvgFrame {
  double center = 520;
  double scale = 500;
  /// Radius (canvas units, from the centre) of the boundary-arc marks.
  double mark_radius = 510;

  std::pair<double, double> point(Complex z) const { return {center + scale * z.real(), center - scale * z.imag()}; }
  std::pair<double, double> ideal(double theta, double radius) const {
    return {center + radius * std::cos(theta), center - radius * std::sin(theta)};
  }
};

/// Fixed-point canvas number, 6 decimals.
std::string svg_number(double x);

/// Path data for the geodesic segment from z1 to z2: a circular arc
/// orthogonal to the unit circle, or a straight segment when the points are
/// collinear with the origin (within 1e-9).
std::string geodesic_path(const SvgFrame& f, Complex z1, Complex z2);

/// Path data for the counterclockwise ideal arc [start, end] drawn at the
/// frame's mark radius.
std::string ideal_arc_path(const SvgFrame& f, double start, double end);

struct RenderInput {
  const TilingGraph* graph = nullptr;
  const PercolationSample* sample = nullptr;
  const ClusterDecomposition* clusters = nullptr;
  /// Arc covers to mark on the ideal circle.
  std::span<const ArcCover> arcs;
};

/// Deterministic SVG document: unit circle, every edge as a geodesic (open
/// edges thick and coloured by cluster when a sample is given), vertices of
/// non-trivial clusters as dots, boundary arcs as marks outside the circle.
std::string render_svg(const RenderInput& in, const SvgFrame& frame = {});

}  // namespace hyperperc::cli
