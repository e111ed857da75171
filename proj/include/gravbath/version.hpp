#pragma once

namespace gravbath {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gravbath
