#pragma once

namespace kh {

inline constexpr const char* version = "0.1.0";

}
