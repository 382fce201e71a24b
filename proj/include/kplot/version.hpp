#pragma once

namespace kplot {

inline constexpr const char* kSoftwareVersion = "0.1.0";

}  // namespace kplot
