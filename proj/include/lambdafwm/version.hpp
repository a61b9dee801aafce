#pragma once

namespace lambdafwm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lambdafwm
