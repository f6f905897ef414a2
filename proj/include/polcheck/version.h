#pragma once

namespace polcheck {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polcheck
