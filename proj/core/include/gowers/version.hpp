#pragma once

namespace gowers {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gowers
