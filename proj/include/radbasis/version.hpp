#pragma once

namespace radbasis {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace radbasis
