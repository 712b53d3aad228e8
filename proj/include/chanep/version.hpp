#pragma once

namespace chanep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chanep
