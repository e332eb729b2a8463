#pragma once

#include <cstdint>

namespace hyperperc {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based edge marks. The stream for a seed is SplitMix64 started at
/// key = mix(seed); the mark of edge e is its (e+1)-th output mapped to
/// [0, 1) with 53 bits. Marks depend only on (seed, e), never on the order
/// of evaluation, so a mark can be drawn lazily or in parallel.
class EdgeMarks {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  explicit constexpr EdgeMarks(std::uint64_t seed) : key_(splitmix64_mix(seed)) {}

  constexpr std::uint64_t bits(std::uint64_t e) const { return splitmix64_mix(key_ + (e + 1) * kGamma); }

  constexpr double mark(std::uint64_t e) const { return static_cast<double>(bits(e) >> 11) * 0x1.0p-53; }

  /// An edge is open at p iff its mark is strictly below p.
  constexpr bool open(std::uint64_t e, double p) const { return mark(e) < p; }

 private:
  std::uint64_t key_;
};

}  // namespace hyperperc
