#pragma once

namespace mvkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mvkit
