#pragma once

namespace edgesec {

inline constexpr const char* kVersion = "0.1.0";

} // namespace edgesec
