#pragma once

#include <functional>
#include <vector>

#include "fimlab/fidelity.hpp"
#include "fimlab/fim_field.hpp"

namespace fimlab {

/// Finite-difference FIM on the center grid from per-node distributions:
/// g00 from horizontal mid-edges, g11 from vertical mid-edges, both edge
/// families averaged onto square centers, and g01 recovered from the two
/// diagonal directional estimates as (g++ - g--) / 4.
FimField grid_fim_from_distributions(const std::vector<DiscreteDistribution>& dists,
                                     const ParameterGrid& node_grid);

/// Quantum-fidelity variant (|<psi_a|psi_b>|) of the same construction.
FimField grid_fim_from_states(const std::vector<QuantumState>& states,
                              const ParameterGrid& node_grid);

/// Shared implementation: fidelity(a, b) returns the fidelity between the
/// node distributions/states at flat node indices a and b.
FimField grid_fim_from_fidelity(
    const std::function<double(std::int64_t, std::int64_t)>& fidelity,
    const ParameterGrid& node_grid, Provenance provenance);

}  // namespace fimlab
