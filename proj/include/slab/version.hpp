#pragma once

namespace slab {

inline constexpr const char* kToolName = "straggler-lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace slab
