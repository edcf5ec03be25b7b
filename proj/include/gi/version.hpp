#pragma once

namespace gi {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gi
