#pragma once

#include "hyperperc/error.hpp"
#include "hyperperc/mobius.hpp"

namespace hyperperc {

/// Tolerance used by every side-of-geodesic test.
inline constexpr double kSideTolerance = 1e-9;

/// Closed hyperbolic halfplane bounded by the geodesic with ideal endpoints
/// `from` and `to`. The halfplane is the side whose ideal boundary is the
/// counterclockwise arc from `from` to `to`; `Side::Complement` selects the
/// other closed side.
class Halfplane {
 public:
  enum class Side { CounterClockwiseArc, Complement };

  Halfplane(double from, double to, Side side = Side::CounterClockwiseArc);

  double from() const { return from_; }
  double to() const { return to_; }
  Side side() const { return side_; }

  /// Ideal arc of this halfplane, as (start, end) in counterclockwise order.
  double arc_start() const { return side_ == Side::CounterClockwiseArc ? from_ : to_; }
  double arc_end() const { return side_ == Side::CounterClockwiseArc ? to_ : from_; }
  double arc_length() const { return wrap_angle(arc_end() - arc_start()); }

  /// The other closed side of the same geodesic.
  Halfplane complement() const;

  /// Signed side function: <= 0 inside, > 0 outside; zero on the geodesic.
  /// Stays bounded for arcs near pi, where the bounding circle degenerates.
  double side_value(Complex z) const;

  bool contains(Complex z, double tol = kSideTolerance) const { return side_value(z) <= tol; }

  /// True when `theta` lies on the closed ideal arc (within `tol`).
  bool arc_contains(double theta, double tol = kSideTolerance) const;

  /// Image under an orientation-preserving isometry.
  Halfplane transformed(const MobiusIsometry& m) const;

  /// Closed-halfplane inclusion, decided from the ideal arcs.
  bool contained_in(const Halfplane& outer, double tol = kSideTolerance) const;

 private:
  double from_;
  double to_;
  Side side_;
};

}  // namespace hyperperc
