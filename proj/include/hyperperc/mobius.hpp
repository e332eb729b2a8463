#pragma once

#include <complex>
#include <numbers>

namespace hyperperc {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double angular_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? kTwoPi - d : d;
}

/// Orientation-preserving isometry of the Poincare disc,
/// z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
class MobiusIsometry {
 public:
  MobiusIsometry() = default;

  /// Builds from raw coefficients and rescales them to unit determinant.
  MobiusIsometry(Complex a, Complex b) : a_(a), b_(b) { normalize(); }

  static MobiusIsometry identity() { return {}; }

  /// Rotation about the origin by `phi`.
  static MobiusIsometry rotation(double phi) {
    MobiusIsometry m;
    m.a_ = std::polar(1.0, phi / 2);
    m.b_ = 0.0;
    return m;
  }

  /// Hyperbolic translation sending the origin to `w` (|w| < 1) along the
  /// diameter through w.
  static MobiusIsometry translation_to(Complex w) {
    double s = 1.0 / std::sqrt(1.0 - std::norm(w));
    MobiusIsometry m;
    m.a_ = s;
    m.b_ = w * s;
    return m;
  }

  /// Rotation by `phi` about the interior point `center`.
  static MobiusIsometry rotation_about(Complex center, double phi) {
    auto t = translation_to(center);
    return t * rotation(phi) * t.inverse();
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  /// |a|^2 - |b|^2; equals 1 up to rounding.
  double determinant() const { return std::norm(a_) - std::norm(b_); }

  /// Action on a point of the closed disc.
  Complex apply(Complex z) const { return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_)); }

  /// Action on an ideal point given by its angle; result in [0, 2*pi).
  double apply_angle(double theta) const { return wrap_angle(std::arg(apply(std::polar(1.0, theta)))); }

  /// Derivative modulus at z, |f'(z)| = 1 / |conj(b) z + conj(a)|^2.
  double derivative_modulus(Complex z) const { return 1.0 / std::norm(std::conj(b_) * z + std::conj(a_)); }

  MobiusIsometry inverse() const {
    MobiusIsometry m;
    m.a_ = std::conj(a_);
    m.b_ = -b_;
    return m;
  }

  friend MobiusIsometry operator*(const MobiusIsometry& f, const MobiusIsometry& g) {
    MobiusIsometry m;
    m.a_ = f.a_ * g.a_ + f.b_ * std::conj(g.b_);
    m.b_ = f.a_ * g.b_ + f.b_ * std::conj(g.a_);
    return m;
  }

  void normalize() {
    double det = determinant();
    if (det > 0) {
      double s = 1.0 / std::sqrt(det);
      a_ *= s;
      b_ *= s;
    }
  }

 private:
  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
};

}  // namespace hyperperc
