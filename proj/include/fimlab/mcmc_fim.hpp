#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fimlab/fim_field.hpp"
#include "fimlab/ising.hpp"

namespace fimlab {

/// Dimensionless energies H/T of one sample set under both endpoint
/// Hamiltonians. e_self[i] uses the Hamiltonian of the point the samples
/// were drawn from, e_other[i] the opposite endpoint's.
struct McmcFimSide {
  std::vector<double> e_self;
  std::vector<double> e_other;
};

struct McmcFimResult {
  double g = 0.0;          // FIM component along the segment direction
  double std_error = 0.0;  // bootstrap standard error
  double log_z_ratio = 0.0;
  std::int64_t n_samples = 0;
};

/// Partition-ratio FIM estimator between two nearby parameter points
/// separated by delta:
///   g ~= (8 / delta^2) E_{x ~ q}[1 - 2 / (r_x + 1/r_x)],
/// with r_x = sqrt(P+~(x)/P-~(x)) sqrt(Z-/Z+), the Z-ratio taken as the
/// geometric mean of its two one-sided estimators, and energies shifted by
/// each side's sample-mean energy for stability.
McmcFimResult fim_from_mcmc(const McmcFimSide& minus, const McmcFimSide& plus,
                            double delta, int bootstrap = 100,
                            std::uint64_t seed = 0);

/// Side construction for a pure temperature change: the raw configuration
/// energy is temperature independent, so H_lambda(x)/T = raw / T.
McmcFimSide side_from_raw_energies(const std::vector<double>& raw, double t_self,
                                   double t_other);

struct TemperatureFimProfile {
  FimField field;                   // on the center grid, provenance mcmc
  std::vector<double> std_errors;   // one per center
};

/// Ground-truth FIM profile of a 1D temperature-sweep dataset (lambda = T/4)
/// with recorded raw energies, one estimate per adjacent grid pair.
TemperatureFimProfile ising_fim_profile(const SampleDataset& dataset,
                                        int bootstrap = 100,
                                        std::uint64_t seed = 0);

}  // namespace fimlab
