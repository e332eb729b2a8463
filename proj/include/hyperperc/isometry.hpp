#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hyperperc/error.hpp"
#include "hyperperc/halfplane.hpp"
#include "hyperperc/mobius.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

enum class IsometryKind { Identity, Hyperbolic, Parabolic, Elliptic };

std::string_view to_string(IsometryKind kind);

/// Fixed-point classification of a disc isometry. Boundary fixed points are
/// ideal angles in [0, 2*pi).
struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  std::vector<double> fixed_points;
  /// Hyperbolic only: iterates of generic boundary points converge to the
  /// attracting point and flee the repelling one.
  std::optional<double> attracting;
  std::optional<double> repelling;
  /// Elliptic only: the fixed point inside the disc.
  std::optional<Complex> interior_fixed_point;
};

/// Raised when the two roots of the fixed-point quadratic are too close to
/// tell "coincident" from "distinct" apart.
class UnstableClassificationError : public Error {
 public:
  UnstableClassificationError(IsometryKind first, IsometryKind second, double separation);
  IsometryKind first() const { return first_; }
  IsometryKind second() const { return second_; }

 private:
  IsometryKind first_;
  IsometryKind second_;
};

/// Root-coincidence tolerance for classify.
inline constexpr double kFixedPointTolerance = 1e-9;

/// Solves conj(b) z^2 + (conj(a) - a) z - b = 0 and counts roots on the unit
/// circle: two -> hyperbolic, one (double root) -> parabolic, none ->
/// elliptic. Root separations within a factor 2 of `tolerance` are ambiguous
/// and raise UnstableClassificationError.
IsometryClass classify(const MobiusIsometry& m, double tolerance = kFixedPointTolerance);

/// m^n for n >= 0.
MobiusIsometry power(const MobiusIsometry& m, int n);

/// Orientation-preserving symmetries of generate_tiling(symbol, *):
/// rotation by 2*pi/q about the root vertex, rotation by 2*pi/p about the
/// centre of the root face, and the half-turn about the midpoint of the
/// root edge on the positive real axis.
std::vector<MobiusIsometry> tiling_generators(SchlafliSymbol symbol);

/// A word in a generator list: entry i >= 0 is gens[i], entry -(i+1) is its
/// inverse. Words apply right to left like function composition.
using GeneratorWord = std::vector<int>;

MobiusIsometry evaluate_word(const GeneratorWord& word, std::span<const MobiusIsometry> gens);

struct HalfplaneMapping {
  MobiusIsometry isometry;
  GeneratorWord word;
  Halfplane image;
};

struct HalfplaneMapOptions {
  /// Longest word tried in total, power included.
  int word_budget = 64;
  /// Longest word enumerated when looking for hyperbolic elements.
  int search_length = 6;
};

/// Finds a word gamma in `gens` with gamma(h1) contained in h2: pick a
/// hyperbolic word whose attracting point lies inside the ideal arc of h2,
/// push h1 off its repelling point with an auxiliary word if needed, then
/// iterate until the image arc sits inside h2's arc. Every returned mapping
/// has been checked by Halfplane::contained_in. Throws MappingNotFound when
/// the budget runs out.
HalfplaneMapping map_halfplane_into(const Halfplane& h1, const Halfplane& h2, std::span<const MobiusIsometry> gens,
                                    const HalfplaneMapOptions& options = {});

}  // namespace hyperperc
