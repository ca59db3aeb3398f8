#include "fimlab/grid_fim.hpp"

#include <cmath>

#include "fimlab/errors.hpp"

namespace fimlab {

FimField grid_fim_from_fidelity(
    const std::function<double(std::int64_t, std::int64_t)>& fidelity,
    const ParameterGrid& node_grid, Provenance provenance) {
  node_grid.validate();
  require(node_grid.points_per_axis >= 2, "grid too small for finite differences");
  const double h = node_grid.spacing();
  const int ppa = node_grid.points_per_axis;
  auto segment = [&](std::int64_t a, std::int64_t b) {
    return 8.0 / (h * h) * (1.0 - std::min(fidelity(a, b), 1.0));
  };

  FimField out = FimField::zeros(node_grid.centers(), provenance);
  if (node_grid.dims == 1) {
    for (int l = 0; l + 1 < ppa; ++l)
      out.entries[l][0] = segment(l, l + 1);
    out.clamp_negative_diagonals();
    return out;
  }

  const int pc = ppa - 1;  // centers per axis
  auto node = [&](int l0, int l1) { return node_grid.index(l0, l1); };
  // g00 on horizontal mid-edges, g11 on vertical mid-edges.
  std::vector<double> g00_edge(static_cast<std::size_t>(pc) * ppa);
  std::vector<double> g11_edge(static_cast<std::size_t>(ppa) * pc);
  for (int l1 = 0; l1 < ppa; ++l1)
    for (int l0 = 0; l0 < pc; ++l0)
      g00_edge[static_cast<std::size_t>(l1) * pc + l0] =
          segment(node(l0, l1), node(l0 + 1, l1));
  for (int l1 = 0; l1 < pc; ++l1)
    for (int l0 = 0; l0 < ppa; ++l0)
      g11_edge[static_cast<std::size_t>(l1) * ppa + l0] =
          segment(node(l0, l1), node(l0, l1 + 1));

  for (int l1 = 0; l1 < pc; ++l1) {
    for (int l0 = 0; l0 < pc; ++l0) {
      // Diagonal displacements (h, +-h) give g00 +- 2 g01 + g11.
      const double g_pp = segment(node(l0, l1), node(l0 + 1, l1 + 1));
      const double g_mm = segment(node(l0, l1 + 1), node(l0 + 1, l1));
      const double g00 = 0.5 * (g00_edge[static_cast<std::size_t>(l1) * pc + l0] +
                                g00_edge[static_cast<std::size_t>(l1 + 1) * pc + l0]);
      const double g11 = 0.5 * (g11_edge[static_cast<std::size_t>(l1) * ppa + l0] +
                                g11_edge[static_cast<std::size_t>(l1) * ppa + l0 + 1]);
      const double g01 = (g_pp - g_mm) / 4.0;
      auto& e = out.entries[static_cast<std::size_t>(l1) * pc + l0];
      e = {g00, g01, g11};
    }
  }
  out.clamp_negative_diagonals();
  return out;
}

FimField grid_fim_from_distributions(const std::vector<DiscreteDistribution>& dists,
                                     const ParameterGrid& node_grid) {
  require(static_cast<std::int64_t>(dists.size()) == node_grid.n_points(),
          "one distribution per grid node required");
  return grid_fim_from_fidelity(
      [&](std::int64_t a, std::int64_t b) {
        return classical_fidelity(dists[a], dists[b]);
      },
      node_grid, Provenance::ExactFiniteDiff);
}

FimField grid_fim_from_states(const std::vector<QuantumState>& states,
                              const ParameterGrid& node_grid) {
  require(static_cast<std::int64_t>(states.size()) == node_grid.n_points(),
          "one state per grid node required");
  return grid_fim_from_fidelity(
      [&](std::int64_t a, std::int64_t b) {
        return std::abs((states[a].amps.adjoint() * states[b].amps).value());
      },
      node_grid, Provenance::ExactFiniteDiff);
}

}  // namespace fimlab
