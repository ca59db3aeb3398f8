#include "fimlab/grid.hpp"

#include "fimlab/errors.hpp"

namespace fimlab {

ParameterGrid ParameterGrid::nodes(int dims, int r) {
  ParameterGrid g{dims, r, 0.0, r};
  g.validate();
  return g;
}

ParameterGrid ParameterGrid::right_nodes(int dims, int r) {
  ParameterGrid g{dims, r, 1.0, r};
  g.validate();
  return g;
}

ParameterGrid ParameterGrid::centers() const {
  ParameterGrid g{dims, resolution, offset + 0.5, points_per_axis - 1};
  g.validate();
  return g;
}

std::int64_t ParameterGrid::n_points() const {
  std::int64_t n = points_per_axis;
  return dims == 2 ? n * n : n;
}

std::int64_t ParameterGrid::index(int l0, int l1) const {
  return static_cast<std::int64_t>(l1) * points_per_axis + l0;
}

std::array<int, 2> ParameterGrid::indices(std::int64_t flat) const {
  return {static_cast<int>(flat % points_per_axis),
          static_cast<int>(flat / points_per_axis)};
}

std::array<double, 2> ParameterGrid::coords(std::int64_t flat) const {
  auto [l0, l1] = indices(flat);
  return {coord(l0), dims == 2 ? coord(l1) : 0.0};
}

void ParameterGrid::validate() const {
  require(dims == 1 || dims == 2, "grid dims must be 1 or 2");
  require(resolution >= 1, "grid resolution must be >= 1");
  require(points_per_axis >= 1, "grid needs at least one point per axis");
  require(offset >= 0.0, "grid offset must be >= 0");
  // All coordinates must land in [0, 1].
  require(max_coord() <= 1.0 + 1e-12, "grid coordinates exceed [0, 1]");
}

}  // namespace fimlab
