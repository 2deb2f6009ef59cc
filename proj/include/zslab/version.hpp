#pragma once

namespace zslab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zslab
