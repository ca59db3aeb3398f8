#pragma once

#include <cstdint>
#include <vector>

#include "fimlab/dataset.hpp"
#include "fimlab/rng.hpp"

namespace fimlab {

/// Discrete probability distribution over a finite outcome set. Outcomes with
/// probability <= support_eps form the zero set S0; the rest are the support
/// S+ used by the explicit susceptibility formulas.
struct DiscreteDistribution {
  std::vector<double> probs;
  double support_eps = 0.0;

  std::size_t size() const { return probs.size(); }
  bool in_support(std::size_t z) const { return probs[z] > support_eps; }

  /// Checks entries >= 0 and sum within 1e-12 of 1.
  void validate() const;
};

/// Draws `count` outcome indices. Inverse-CDF over the support for small
/// supports, Walker alias table above 4096 outcomes. Deterministic per seed.
std::vector<std::uint64_t> sample_outcomes(const DiscreteDistribution& dist,
                                           std::int64_t count, CounterRng rng);

/// Same draws packed as n_bits-bit samples (outcome index = bitstring).
std::vector<Word> sample_bitstrings(const DiscreteDistribution& dist, int n_bits,
                                    std::int64_t count, CounterRng rng);

}  // namespace fimlab
