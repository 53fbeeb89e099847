#pragma once

namespace geolab {
inline constexpr const char* kVersion = "0.1.0";
}
