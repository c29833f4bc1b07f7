#pragma once

namespace qswap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qswap
