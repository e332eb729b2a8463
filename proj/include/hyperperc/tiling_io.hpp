#pragma once

#include <filesystem>
#include <iosfwd>

#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// Text graph format, version 1. Line oriented, '#' starts a comment line:
///
///   hyperperc-tiling 1
///   symbol P Q
///   radius R
///   counts V E F
///   vertices            V lines: layer x y
///   rotation            V lines: degree n_1 ... n_degree (counterclockwise)
///   edges               E lines: u v
///   faces               F lines: size v_1 ... v_size cx cy
///
/// Reals are written in shortest round-trip form, so reading back yields a
/// graph equal to the original (operator== and fingerprint). The edge table
/// is redundant with the rotation table and is checked on read.
void write_tiling(std::ostream& out, const TilingGraph& g);
TilingGraph read_tiling(std::istream& in);

void save_tiling(const std::filesystem::path& path, const TilingGraph& g);
TilingGraph load_tiling(const std::filesystem::path& path);

}  // namespace hyperperc
