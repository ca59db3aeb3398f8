#pragma once

namespace fimlab {

inline constexpr const char* kVersionString = "fimlab 0.1.0";

}  // namespace fimlab
