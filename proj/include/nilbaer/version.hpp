#pragma once

namespace nilbaer {

inline constexpr const char* version = "0.1.0";

} // namespace nilbaer
