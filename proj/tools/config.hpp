#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hyperperc/tiling.hpp"

namespace hyperperc::cli {

/// Every knob that affects a run. Serialized as `key = value` lines; lists
/// are comma separated. Unset optional keys are omitted from the file.
struct ExperimentConfig {
  SchlafliSymbol symbol{5, 5};
  /// Patch radius for `tiling gen` and `render`.
  int radius = 6;
  /// Patch radii for `sweep`.
  std::vector<int> radii{6, 8, 10};
  double pmin = 0.0;
  double pmax = 1.0;
  int steps = 51;
  int seeds = 200;
  std::uint64_t seed_base = 0;
  /// Giant-candidate threshold; 0 means max(2, ceil(1% of the outer layer)).
  std::size_t tau = 0;
  /// Cluster size floor for limit directions and halfplane counts.
  std::size_t sigma = 50;
  std::filesystem::path out = "out";
  /// Vertex cap of every generated patch. The default boundary patch
  /// (radius 12 for {5,5}) needs about 7.8M.
  std::size_t max_vertices = 5'000'000;

  /// `boundary`: explicit p values, or empty with boundary_auto set.
  std::vector<double> boundary_p;
  bool boundary_auto = true;
  /// Sweep JSON holding p_c and p_u for the automatic choice; defaults to
  /// <out>/sweep.json.
  std::optional<std::filesystem::path> estimates;
  /// Patch radius of the boundary analysis; 0 means last chain radius + 2.
  /// At r = R - 1 only the outermost layer remains, which splits into
  /// one-layer fragments even at p = 1, so one layer of slack is kept.
  int boundary_radius = 0;
  std::vector<int> chain_radii{4, 5, 6, 7, 8, 9, 10};

  /// `render`: graph file to draw (else the symbol/radius patch), optional
  /// sample, boundary-arc marks of giant candidates.
  std::optional<std::filesystem::path> graph;
  std::optional<double> render_p;
  std::uint64_t render_seed = 0;
  bool render_arcs = false;

  std::vector<double> p_grid() const;
  std::vector<std::uint64_t> seed_list() const;
  int effective_boundary_radius() const;

  /// Checks module preconditions; throws InvalidSymbol / InvalidSweepSpec /
  /// InvalidInput.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string format_config(const ExperimentConfig& c);
/// Applies the keys found in `text` on top of `base`. Unknown keys and
/// malformed values raise InvalidInput.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// One `key = value` assignment; used for both files and flag overrides.
void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value);

/// Shortest round-trip text of a double.
std::string format_real(double x);

}  // namespace hyperperc::cli
