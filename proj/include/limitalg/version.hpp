#pragma once

namespace limitalg {

inline constexpr const char* kToolName = "limitalg";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace limitalg
