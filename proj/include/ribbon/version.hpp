#pragma once

namespace ribbon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ribbon
