#pragma once

namespace qlab {
inline constexpr const char* version = "0.1.0";
}
