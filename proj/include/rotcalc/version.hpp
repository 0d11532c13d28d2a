#pragma once

namespace rotcalc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rotcalc
