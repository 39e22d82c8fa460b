#pragma once

namespace conint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace conint
