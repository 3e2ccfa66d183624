#pragma once

namespace pprtopk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pprtopk
