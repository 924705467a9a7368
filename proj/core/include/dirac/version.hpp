#pragma once

namespace dirac {

inline constexpr const char* kVersion = "0.1.0";

} // namespace dirac
