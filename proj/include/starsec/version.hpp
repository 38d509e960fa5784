#pragma once

namespace starsec {

inline constexpr const char* kToolName = "starsec";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace starsec
