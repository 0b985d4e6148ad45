#pragma once

namespace qlucas {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qlucas
