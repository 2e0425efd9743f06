#pragma once

#include <string_view>

namespace nlsw {

inline constexpr std::string_view solver_version = "0.1.0";

}  // namespace nlsw
