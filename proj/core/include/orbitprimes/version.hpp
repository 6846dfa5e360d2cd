#pragma once

namespace orbitprimes {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace orbitprimes
