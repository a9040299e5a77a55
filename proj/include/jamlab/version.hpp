#pragma once

namespace jamlab {

inline constexpr const char* kVersion = "1.0.0";

} // namespace jamlab
