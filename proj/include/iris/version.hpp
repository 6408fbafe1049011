#pragma once

namespace iris {

inline constexpr const char* kToolName = "iriseval";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace iris
