#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "hyperperc/error.hpp"

namespace hyperperc::cli {

/// 0 success, 2 invalid input, 3 runtime or estimator failure, 4 IO.
int exit_code(ErrorKind kind);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Each command writes its outputs under config.out plus a manifest
/// `manifest_<command>.json` listing them with checksums, and returns the
/// output paths (manifest last). Progress lines go to `log`.
std::vector<std::filesystem::path> cmd_tiling_gen(const ExperimentConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_sweep(const ExperimentConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_boundary(const ExperimentConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_render(const ExperimentConfig& config, std::ostream& log);

/// Middle-phase p from a sweep JSON: (p_c + p_u) / 2. Throws
/// MissingEstimates when the file or either estimate is absent.
double middle_phase_p(const std::filesystem::path& sweep_json);

}  // namespace hyperperc::cli
