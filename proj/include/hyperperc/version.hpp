#pragma once

namespace hyperperc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hyperperc
