#pragma once

namespace stancelp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stancelp
