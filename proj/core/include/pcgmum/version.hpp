#pragma once

namespace pcgmum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pcgmum
