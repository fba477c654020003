#pragma once

namespace g2cert {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "g2cert";

} // namespace g2cert
