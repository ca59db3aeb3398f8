#pragma once

#include <array>
#include <cstdint>

namespace fimlab {

/// Rectangular grid over the parameter manifold, 1D or 2D, coordinates in
/// [0, 1]. A point with integer index l along an axis sits at
/// (l + offset) / resolution. offset 0 gives the usual node grid, 1/2 the
/// grid of square centers, and 1 a right-aligned node grid such as the
/// temperature grid T/4 in (0, 1].
struct ParameterGrid {
  int dims = 1;
  int resolution = 1;       // spacing between neighbours is 1/resolution
  double offset = 0.0;
  int points_per_axis = 1;

  static ParameterGrid nodes(int dims, int r);
  static ParameterGrid right_nodes(int dims, int r);

  /// Grid of the centers of the squares (edges in 1D): one fewer point per
  /// axis, shifted by half a spacing.
  ParameterGrid centers() const;

  double spacing() const { return 1.0 / resolution; }
  std::int64_t n_points() const;
  double coord(int l) const { return (l + offset) / resolution; }

  /// Flat index ordering: axis 0 fastest, i.e. flat = l1 * ppa + l0.
  std::int64_t index(int l0, int l1 = 0) const;
  std::array<int, 2> indices(std::int64_t flat) const;
  std::array<double, 2> coords(std::int64_t flat) const;

  double min_coord() const { return coord(0); }
  double max_coord() const { return coord(points_per_axis - 1); }

  void validate() const;
  bool operator==(const ParameterGrid&) const = default;
};

}  // namespace fimlab
