#include "hyperperc/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hyperperc {

std::string_view to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Hyperbolic: return "hyperbolic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Elliptic: return "elliptic";
  }
  return "unknown";
}

UnstableClassificationError::UnstableClassificationError(IsometryKind first, IsometryKind second, double separation)
    : Error(ErrorKind::UnstableClassification,
            "fixed-point separation " + std::to_string(separation) + " is ambiguous between " +
                std::string(to_string(first)) + " and " + std::string(to_string(second))),
      first_(first),
      second_(second) {}

IsometryClass classify(const MobiusIsometry& m, double tolerance) {
  const Complex a = m.a();
  const Complex b = m.b();
  const double im = a.imag();
  const double nb = std::abs(b);
  IsometryClass out;
  if (nb < 1e-12 && std::fabs(im) < 1e-12) {
    out.kind = IsometryKind::Identity;
    return out;
  }
  if (nb < 1e-14) {
    out.kind = IsometryKind::Elliptic;
    out.interior_fixed_point = Complex{};
    return out;
  }

  // Roots are (i Im(a) +- sqrt(s)) / conj(b) with s = |b|^2 - Im(a)^2.
  const double s = (nb - std::fabs(im)) * (nb + std::fabs(im));
  const double separation = 2.0 * std::sqrt(std::fabs(s)) / nb;
  const Complex cb = std::conj(b);
  if (separation >= tolerance / 2 && separation <= 2 * tolerance) {
    throw UnstableClassificationError(IsometryKind::Parabolic, s > 0 ? IsometryKind::Hyperbolic : IsometryKind::Elliptic,
                                      separation);
  }
  if (separation < tolerance / 2) {
    out.kind = IsometryKind::Parabolic;
    out.fixed_points.push_back(wrap_angle(std::arg(Complex{0.0, im} / cb)));
    return out;
  }
  if (s > 0) {
    const double r = std::sqrt(s);
    Complex z1 = Complex{r, im} / cb;
    Complex z2 = Complex{-r, im} / cb;
    out.kind = IsometryKind::Hyperbolic;
    double t1 = wrap_angle(std::arg(z1));
    double t2 = wrap_angle(std::arg(z2));
    out.fixed_points = {std::min(t1, t2), std::max(t1, t2)};
    bool first_attracts = m.derivative_modulus(z1) < m.derivative_modulus(z2);
    out.attracting = first_attracts ? t1 : t2;
    out.repelling = first_attracts ? t2 : t1;
    return out;
  }
  const double r = std::sqrt(-s);
  Complex z1 = Complex{0.0, im + r} / cb;
  Complex z2 = Complex{0.0, im - r} / cb;
  out.kind = IsometryKind::Elliptic;
  out.interior_fixed_point = std::norm(z1) < 1.0 ? z1 : z2;
  return out;
}

MobiusIsometry power(const MobiusIsometry& m, int n) {
  MobiusIsometry result;
  MobiusIsometry base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::vector<MobiusIsometry> tiling_generators(SchlafliSymbol symbol) {
  symbol.validate();
  const double pi = std::numbers::pi;
  Complex face_center = std::polar(disc_radius(circumradius(symbol)), pi / symbol.q);
  Complex edge_mid{disc_radius(edge_length(symbol) / 2), 0.0};
  return {
      MobiusIsometry::rotation(kTwoPi / symbol.q),
      MobiusIsometry::rotation_about(face_center, kTwoPi / symbol.p),
      MobiusIsometry::rotation_about(edge_mid, pi),
  };
}

MobiusIsometry evaluate_word(const GeneratorWord& word, std::span<const MobiusIsometry> gens) {
  MobiusIsometry m;
  for (int letter : word) {
    if (letter >= 0) {
      m = m * gens[static_cast<std::size_t>(letter)];
    } else {
      m = m * gens[static_cast<std::size_t>(-letter - 1)].inverse();
    }
  }
  return m;
}

namespace {

struct HyperbolicWord {
  GeneratorWord word;
  MobiusIsometry m;
  double attracting;
  double repelling;
};

bool strictly_inside_arc(const Halfplane& h, double theta, double margin) {
  double offset = wrap_angle(theta - h.arc_start());
  return offset > margin && offset < h.arc_length() - margin;
}

}  // namespace

HalfplaneMapping map_halfplane_into(const Halfplane& h1, const Halfplane& h2, std::span<const MobiusIsometry> gens,
                                    const HalfplaneMapOptions& options) {
  if (h1.contained_in(h2)) return {MobiusIsometry::identity(), {}, h1};

  const int letters = static_cast<int>(gens.size());
  std::vector<std::pair<GeneratorWord, MobiusIsometry>> words;
  std::vector<std::pair<GeneratorWord, MobiusIsometry>> frontier{{GeneratorWord{}, MobiusIsometry{}}};
  for (int len = 1; len <= options.search_length && len <= options.word_budget; ++len) {
    std::vector<std::pair<GeneratorWord, MobiusIsometry>> next;
    for (const auto& [w, m] : frontier) {
      for (int i = 0; i < letters; ++i) {
        for (int letter : {i, -i - 1}) {
          // -letter-1 is the inverse letter in both sign conventions.
          if (!w.empty() && w.back() == -letter - 1) continue;
          GeneratorWord nw = w;
          nw.push_back(letter);
          const MobiusIsometry& g = letter >= 0 ? gens[letter] : gens[-letter - 1];
          MobiusIsometry nm = m * (letter >= 0 ? g : g.inverse());
          next.emplace_back(std::move(nw), nm);
        }
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<HyperbolicWord> hyperbolic;
  for (const auto& [w, m] : words) {
    try {
      IsometryClass c = classify(m);
      if (c.kind == IsometryKind::Hyperbolic) hyperbolic.push_back({w, m, *c.attracting, *c.repelling});
    } catch (const UnstableClassificationError&) {
    }
  }

  const double margin = 1e-7;
  for (const HyperbolicWord& gamma : hyperbolic) {
    if (!strictly_inside_arc(h2, gamma.attracting, margin)) continue;
    const int gamma_len = static_cast<int>(gamma.word.size());

    // Auxiliary push: identity first, then the shortest words moving h1's
    // arc away from the repelling point.
    const GeneratorWord* push = nullptr;
    MobiusIsometry push_m;
    static const GeneratorWord kEmpty;
    if (!h1.arc_contains(gamma.repelling, margin)) {
      push = &kEmpty;
    } else {
      for (const auto& [w, m] : words) {
        if (static_cast<int>(w.size()) + gamma_len > options.word_budget) break;
        if (!h1.transformed(m).arc_contains(gamma.repelling, margin)) {
          push = &w;
          push_m = m;
          break;
        }
      }
    }
    if (push == nullptr) continue;

    MobiusIsometry current = push_m;
    for (int n = 1; static_cast<int>(push->size()) + n * gamma_len <= options.word_budget; ++n) {
      current = gamma.m * current;
      Halfplane image = h1.transformed(current);
      if (image.contained_in(h2)) {
        GeneratorWord word;
        for (int k = 0; k < n; ++k) word.insert(word.end(), gamma.word.begin(), gamma.word.end());
        word.insert(word.end(), push->begin(), push->end());
        return {current, std::move(word), image};
      }
    }
  }
  throw Error(ErrorKind::MappingNotFound, "no word of length <= " + std::to_string(options.word_budget) +
                                              " maps the halfplane into the target");
}

}  // namespace hyperperc
