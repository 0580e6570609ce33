#pragma once

namespace nls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nls
