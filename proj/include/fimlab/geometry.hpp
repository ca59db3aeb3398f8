#pragma once

#include <string>

namespace fimlab {

/// Site adjacency used by the convolution-style feature layer: a periodic
/// chain (rows == 1) or a periodic rows x cols grid with site index
/// row * cols + col.
struct LatticeGeometry {
  int rows = 1;
  int cols = 0;

  int n_sites() const { return rows * cols; }
  bool is_chain() const { return rows == 1; }

  std::string to_string() const;
  static LatticeGeometry from_string(const std::string& s);
  static LatticeGeometry chain(int n) { return {1, n}; }
  static LatticeGeometry grid2d(int rows, int cols) { return {rows, cols}; }
};

}  // namespace fimlab
