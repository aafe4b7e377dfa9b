#pragma once

namespace netres {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace netres
