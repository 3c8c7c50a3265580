#pragma once

namespace wvsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wvsim
