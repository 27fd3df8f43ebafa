#pragma once

namespace tempoclust {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tempoclust
