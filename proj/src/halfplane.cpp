#include "hyperperc/halfplane.hpp"

#include <cmath>

namespace hyperperc {

Halfplane::Halfplane(double from, double to, Side side)
    : from_(wrap_angle(from)), to_(wrap_angle(to)), side_(side) {
  if (angular_distance(from_, to_) < kSideTolerance) {
    throw Error(ErrorKind::InvalidInput, "halfplane endpoints must be distinct ideal points");
  }
}

Halfplane Halfplane::complement() const {
  return {from_, to_, side_ == Side::CounterClockwiseArc ? Side::Complement : Side::CounterClockwiseArc};
}

double Halfplane::side_value(Complex z) const {
  const double half = arc_length() / 2;
  const double mid = arc_start() + half;
  return std::cos(half) * (std::norm(z) + 1.0) - 2.0 * std::real(z * std::polar(1.0, -mid));
}

bool Halfplane::arc_contains(double theta, double tol) const {
  double offset = wrap_angle(theta - arc_start());
  return offset <= arc_length() + tol || offset >= kTwoPi - tol;
}

Halfplane Halfplane::transformed(const MobiusIsometry& m) const {
  return {m.apply_angle(from_), m.apply_angle(to_), side_};
}

bool Halfplane::contained_in(const Halfplane& outer, double tol) const {
  double offset = wrap_angle(arc_start() - outer.arc_start());
  if (offset >= kTwoPi - tol) offset = 0.0;
  return offset + arc_length() <= outer.arc_length() + tol;
}

}  // namespace hyperperc
