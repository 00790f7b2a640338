#pragma once

namespace vbpbb {

inline constexpr const char* kToolName = "vbpbb";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace vbpbb
