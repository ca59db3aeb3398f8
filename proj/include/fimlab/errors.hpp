#pragma once

#include <stdexcept>
#include <string>

namespace fimlab {

// I/O failures (missing files, short writes). CLI maps these to exit 3.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed on-disk artifacts (bad magic, version or length mismatch).
// Also mapped to exit 3.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures (non-convergence, overflow guards). Exit 4.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace fimlab
