#pragma once

namespace selfsim {

inline constexpr const char* version = "0.1.0";

}  // namespace selfsim
