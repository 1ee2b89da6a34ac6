#pragma once

namespace agequant {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace agequant
