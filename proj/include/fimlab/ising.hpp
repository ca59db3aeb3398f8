#pragma once

#include <cstdint>
#include <vector>

#include "fimlab/dataset.hpp"
#include "fimlab/distribution.hpp"
#include "fimlab/rng.hpp"

namespace fimlab {

/// L x L periodic lattice of +-1 spins with Hamiltonian
///   H = c_nn * sum_NN s_i s_j + c_nnn * sum_NNN s_i s_j + c_field * sum s_i.
/// The plain ferromagnet is c_nn = -1 (J = 1, h = 0); the antiferromagnetic
/// next-nearest-neighbour model is c_nn = J1, c_nnn = J2.
/// The bond sums are tracked incrementally as integers, so the energy is
/// exactly reproducible from a configuration.
class IsingLattice {
 public:
  IsingLattice(int L, double c_nn, double c_nnn = 0.0, double c_field = 0.0);

  int size() const { return L_; }
  int n_sites() const { return L_ * L_; }
  double c_nn() const { return c_nn_; }
  double c_nnn() const { return c_nnn_; }
  double c_field() const { return c_field_; }

  void randomize(CounterRng& rng);

  /// One Metropolis step: a single-spin proposal at every site in raster
  /// order. beta is the inverse temperature multiplying H.
  void metropolis_sweep(double beta, CounterRng& rng);

  /// Whole-row / whole-column flip proposals (Metropolis-accepted), one pass
  /// over all 2L lines.
  void line_update_pass(double beta, CounterRng& rng);

  long long sum_nn() const { return s_nn_; }
  long long sum_nnn() const { return s_nnn_; }
  long long sum_field() const { return s_field_; }
  double energy() const;
  double recompute_energy() const;
  void recompute_sums(long long& nn, long long& nnn, long long& field) const;

  long long magnetization() const { return s_field_; }
  long long staggered_magnetization() const;

  int spin(int x, int y) const { return spins_[y * L_ + x]; }
  void set_configuration(const std::vector<signed char>& spins);
  const std::vector<signed char>& configuration() const { return spins_; }

  /// Swaps the spin configurations (and tracked sums) of two lattices with
  /// identical couplings; used by parallel tempering.
  static void swap_configurations(IsingLattice& a, IsingLattice& b);

  /// Packed bitstring (bit = 1 for spin +1, site index = y * L + x) after an
  /// optional symmetry transformation; the lattice itself is not modified.
  std::vector<Word> packed(bool flip, int shift_x, int shift_y) const;

 private:
  int site_delta_nn(int x, int y) const;
  int site_delta_nnn(int x, int y) const;

  int L_;
  double c_nn_, c_nnn_, c_field_;
  std::vector<signed char> spins_;
  long long s_nn_ = 0, s_nnn_ = 0, s_field_ = 0;
};

/// Temperature schedule of the single-parameter Metropolis sweep. Extra
/// equilibration near the critical point follows
/// d(T) = 1 + 1 / (0.1 + (T - t_crit)^2): floor(pre_factor d) + floor(gap_factor d)
/// steps before the first sample and floor(gap_factor d) between samples.
struct McmcSchedule {
  int n_chains = 70;
  int equilibration_steps = 70;
  std::vector<double> temperatures;  // descending
  double t_crit = 2.2691853142129728;
  int samples_per_temperature = 2;
  int pre_factor = 30;
  int gap_factor = 9;

  double d(double t) const { return 1.0 + 1.0 / (0.1 + (t - t_crit) * (t - t_crit)); }
  void validate() const;
};

/// Samples for a single grid point: packed bitstrings plus the raw lattice
/// energies H(x) recorded when they were drawn.
struct EnergyTaggedSamples {
  int n_bits = 0;
  std::vector<Word> packed;       // count * words_for_bits(n_bits)
  std::vector<double> energies;   // count entries

  int words() const { return words_for_bits(n_bits); }
  int count() const { return static_cast<int>(energies.size()); }
  const Word* sample(int i) const { return packed.data() + static_cast<std::size_t>(i) * words(); }
};

/// Metropolis sweep over the descending temperature list (lambda = T / 4).
/// grid must be 1D; grid coordinate l maps to T = 4 * coord(l). Emits the
/// dataset with per-sample raw energies.
SampleDataset ising_generate(int L, const ParameterGrid& grid,
                             const McmcSchedule& schedule, std::uint64_t seed,
                             int workers = 0);

/// Parallel-tempering generator for the next-nearest-neighbour model on a 2D
/// grid: J1 = lambda0, J2 = 1 - lambda0, T = 2.5 * lambda1. Runs a PT array
/// over the lambda1 column per independent simulation.
struct IsnnnSchedule {
  int n_sims = 70;
  int anneal_sweeps = 50;
  int reheat_sweeps = 50;
  int inter_sample_sweeps = 32;
  int samples_per_sim = 2;
};

SampleDataset isnnn_generate(int L, const ParameterGrid& grid,
                             const IsnnnSchedule& schedule, std::uint64_t seed,
                             int workers = 0);

/// Exact Gibbs distribution of the L x L model by full enumeration
/// (guarded to 2^(L^2) <= 2^24). Outcome index = packed spin bitstring.
DiscreteDistribution exact_enumeration_distribution(int L, double c_nn,
                                                    double c_nnn, double c_field,
                                                    double temperature);

/// Raw energies of every configuration, indexed like the distribution above.
std::vector<double> exact_enumeration_energies(int L, double c_nn, double c_nnn,
                                               double c_field);

}  // namespace fimlab
