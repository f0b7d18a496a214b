#pragma once

namespace agree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace agree
