#pragma once

namespace abstokes {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace abstokes
