#include "fimlab/ising.hpp"

#include <algorithm>
#include <cmath>

#include "fimlab/errors.hpp"
#include "fimlab/parallel.hpp"

namespace fimlab {

IsingLattice::IsingLattice(int L, double c_nn, double c_nnn, double c_field)
    : L_(L), c_nn_(c_nn), c_nnn_(c_nnn), c_field_(c_field) {
  require(L >= 2, "lattice size must be >= 2");
  spins_.assign(static_cast<std::size_t>(L) * L, 1);
  recompute_sums(s_nn_, s_nnn_, s_field_);
}

void IsingLattice::randomize(CounterRng& rng) {
  for (auto& s : spins_) s = rng.bernoulli(0.5) ? 1 : -1;
  recompute_sums(s_nn_, s_nnn_, s_field_);
}

void IsingLattice::set_configuration(const std::vector<signed char>& spins) {
  require(spins.size() == spins_.size(), "configuration size mismatch");
  spins_ = spins;
  recompute_sums(s_nn_, s_nnn_, s_field_);
}

void IsingLattice::recompute_sums(long long& nn, long long& nnn,
                                  long long& field) const {
  nn = nnn = field = 0;
  const int L = L_;
  for (int y = 0; y < L; ++y) {
    const int yp = (y + 1) % L;
    for (int x = 0; x < L; ++x) {
      const int xp = (x + 1) % L;
      const int s = spins_[y * L + x];
      nn += s * (spins_[y * L + xp] + spins_[yp * L + x]);
      nnn += s * (spins_[yp * L + xp] + spins_[yp * L + (x + L - 1) % L]);
      field += s;
    }
  }
}

double IsingLattice::energy() const {
  return c_nn_ * s_nn_ + c_nnn_ * s_nnn_ + c_field_ * s_field_;
}

double IsingLattice::recompute_energy() const {
  long long nn, nnn, field;
  recompute_sums(nn, nnn, field);
  return c_nn_ * nn + c_nnn_ * nnn + c_field_ * field;
}

long long IsingLattice::staggered_magnetization() const {
  long long m = 0;
  for (int y = 0; y < L_; ++y)
    for (int x = 0; x < L_; ++x)
      m += ((x + y) % 2 ? -1 : 1) * spins_[y * L_ + x];
  return m;
}

int IsingLattice::site_delta_nn(int x, int y) const {
  const int L = L_;
  return spins_[y * L + (x + 1) % L] + spins_[y * L + (x + L - 1) % L] +
         spins_[((y + 1) % L) * L + x] + spins_[((y + L - 1) % L) * L + x];
}

int IsingLattice::site_delta_nnn(int x, int y) const {
  const int L = L_;
  const int xp = (x + 1) % L, xm = (x + L - 1) % L;
  const int yp = (y + 1) % L, ym = (y + L - 1) % L;
  return spins_[yp * L + xp] + spins_[yp * L + xm] + spins_[ym * L + xp] +
         spins_[ym * L + xm];
}

void IsingLattice::metropolis_sweep(double beta, CounterRng& rng) {
  // One proposal per site at a uniformly random site each time. A raster
  // scan is not ergodic here: zero-cost flips are always accepted, so the
  // deterministic site order makes some end-of-sweep states unreachable
  // (measurably biased on small lattices).
  const int L = L_;
  const int n = L * L;
  for (int k = 0; k < n; ++k) {
    const int site = static_cast<int>(rng.below(n));
    const int x = site % L, y = site / L;
    const int s = spins_[site];
    const int nn = site_delta_nn(x, y);
    const int nnn = c_nnn_ != 0.0 ? site_delta_nnn(x, y) : 0;
    const long long d_nn = -2LL * s * nn;
    const long long d_nnn = -2LL * s * nnn;
    const long long d_field = -2LL * s;
    const double d_e = c_nn_ * d_nn + c_nnn_ * d_nnn + c_field_ * d_field;
    if (d_e <= 0.0 || rng.uniform() < std::exp(-beta * d_e)) {
      spins_[site] = static_cast<signed char>(-s);
      s_nn_ += d_nn;
      s_nnn_ += d_nnn;
      s_field_ += d_field;
    }
  }
}

void IsingLattice::line_update_pass(double beta, CounterRng& rng) {
  const int L = L_;
  // rows
  for (int y = 0; y < L; ++y) {
    const int yp = (y + 1) % L, ym = (y + L - 1) % L;
    long long cross_nn = 0, cross_nnn = 0, field = 0;
    for (int x = 0; x < L; ++x) {
      const int s = spins_[y * L + x];
      cross_nn += s * (spins_[yp * L + x] + spins_[ym * L + x]);
      const int xp = (x + 1) % L, xm = (x + L - 1) % L;
      cross_nnn += s * (spins_[yp * L + xp] + spins_[yp * L + xm] +
                        spins_[ym * L + xp] + spins_[ym * L + xm]);
      field += s;
    }
    const long long d_nn = -2 * cross_nn;
    const long long d_nnn = -2 * cross_nnn;
    const long long d_field = -2 * field;
    const double d_e = c_nn_ * d_nn + c_nnn_ * d_nnn + c_field_ * d_field;
    if (d_e <= 0.0 || rng.uniform() < std::exp(-beta * d_e)) {
      for (int x = 0; x < L; ++x) spins_[y * L + x] = -spins_[y * L + x];
      s_nn_ += d_nn;
      s_nnn_ += d_nnn;
      s_field_ += d_field;
    }
  }
  // columns
  for (int x = 0; x < L; ++x) {
    const int xp = (x + 1) % L, xm = (x + L - 1) % L;
    long long cross_nn = 0, cross_nnn = 0, field = 0;
    for (int y = 0; y < L; ++y) {
      const int s = spins_[y * L + x];
      cross_nn += s * (spins_[y * L + xp] + spins_[y * L + xm]);
      const int yp = (y + 1) % L, ym = (y + L - 1) % L;
      cross_nnn += s * (spins_[yp * L + xp] + spins_[yp * L + xm] +
                        spins_[ym * L + xp] + spins_[ym * L + xm]);
      field += s;
    }
    const long long d_nn = -2 * cross_nn;
    const long long d_nnn = -2 * cross_nnn;
    const long long d_field = -2 * field;
    const double d_e = c_nn_ * d_nn + c_nnn_ * d_nnn + c_field_ * d_field;
    if (d_e <= 0.0 || rng.uniform() < std::exp(-beta * d_e)) {
      for (int y = 0; y < L; ++y) spins_[y * L + x] = -spins_[y * L + x];
      s_nn_ += d_nn;
      s_nnn_ += d_nnn;
      s_field_ += d_field;
    }
  }
}

void IsingLattice::swap_configurations(IsingLattice& a, IsingLattice& b) {
  require(a.L_ == b.L_, "parallel tempering swap needs equal lattice sizes");
  std::swap(a.spins_, b.spins_);
  std::swap(a.s_nn_, b.s_nn_);
  std::swap(a.s_nnn_, b.s_nnn_);
  std::swap(a.s_field_, b.s_field_);
}

std::vector<Word> IsingLattice::packed(bool flip, int shift_x, int shift_y) const {
  const int L = L_;
  std::vector<Word> out(words_for_bits(L * L), 0);
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      int s = spins_[((y + shift_y) % L) * L + (x + shift_x) % L];
      if (flip) s = -s;
      if (s > 0) set_bit(out.data(), y * L + x, true);
    }
  return out;
}

void McmcSchedule::validate() const {
  require(n_chains >= 1, "schedule needs at least one chain");
  require(equilibration_steps >= 1, "equilibration steps must be >= 1");
  require(samples_per_temperature >= 1, "samples per temperature must be >= 1");
  require(pre_factor >= 1 && gap_factor >= 1, "step factors must be >= 1");
  for (double t : temperatures) require(t > 0.0, "temperatures must be > 0");
  for (std::size_t i = 1; i < temperatures.size(); ++i)
    require(temperatures[i] < temperatures[i - 1],
            "temperature list must be descending");
}

namespace {

struct ChainOutput {
  // per temperature index (ascending grid order): packed samples + energies
  std::vector<std::vector<Word>> packed;
  std::vector<std::vector<double>> energies;
};

ChainOutput run_ising_chain(int L, const std::vector<double>& temps_desc,
                            const McmcSchedule& schedule, CounterRng rng) {
  const int n_t = static_cast<int>(temps_desc.size());
  ChainOutput out;
  out.packed.resize(n_t);
  out.energies.resize(n_t);

  IsingLattice lat(L, -1.0);  // ferromagnet, J = 1, h = 0
  lat.randomize(rng);
  const double t_max = temps_desc.front();
  for (int step = 0; step < schedule.equilibration_steps; ++step)
    lat.metropolis_sweep(1.0 / t_max, rng);

  for (int ti = 0; ti < n_t; ++ti) {
    const double t = temps_desc[ti];
    const double beta = 1.0 / t;
    const double d = schedule.d(t);
    const int pre = static_cast<int>(std::floor(schedule.pre_factor * d)) +
                    static_cast<int>(std::floor(schedule.gap_factor * d));
    const int gap = static_cast<int>(std::floor(schedule.gap_factor * d));
    const int grid_index = n_t - 1 - ti;  // ascending lambda order

    for (int step = 0; step < pre; ++step) lat.metropolis_sweep(beta, rng);
    for (int s = 0; s < schedule.samples_per_temperature; ++s) {
      if (s > 0)
        for (int step = 0; step < gap; ++step) lat.metropolis_sweep(beta, rng);
      // random global flip (h = 0 keeps it a symmetry) and cyclic shift,
      // applied to the recorded copy only
      const bool flip = rng.bernoulli(0.5);
      const int sx = static_cast<int>(rng.below(L));
      const int sy = static_cast<int>(rng.below(L));
      auto bits = lat.packed(flip, sx, sy);
      out.packed[grid_index].insert(out.packed[grid_index].end(), bits.begin(),
                                    bits.end());
      out.energies[grid_index].push_back(lat.energy());
    }
  }
  return out;
}

}  // namespace

SampleDataset ising_generate(int L, const ParameterGrid& grid,
                             const McmcSchedule& schedule, std::uint64_t seed,
                             int workers) {
  require(L >= 3, "ising_generate needs L >= 3");
  require(grid.dims == 1, "ising_generate needs a 1D grid");
  McmcSchedule sched = schedule;
  if (sched.temperatures.empty()) {
    for (int l = grid.points_per_axis - 1; l >= 0; --l)
      sched.temperatures.push_back(4.0 * grid.coord(l));
  }
  require(static_cast<int>(sched.temperatures.size()) == grid.points_per_axis,
          "temperature list does not match grid");
  sched.validate();

  std::vector<ChainOutput> chains(sched.n_chains);
  CounterRng root(seed, 0x6973696e);  // "isin"
  parallel_for(sched.n_chains, workers, [&](std::size_t c) {
    chains[c] = run_ising_chain(L, sched.temperatures, sched, root.split(c));
  });

  SampleDataset ds;
  ds.grid = grid;
  ds.n_bits = L * L;
  ds.samples.resize(grid.n_points());
  ds.energies.resize(grid.n_points());
  for (std::int64_t p = 0; p < grid.n_points(); ++p) {
    for (int c = 0; c < sched.n_chains; ++c) {
      ds.samples[p].insert(ds.samples[p].end(), chains[c].packed[p].begin(),
                           chains[c].packed[p].end());
      ds.energies[p].insert(ds.energies[p].end(), chains[c].energies[p].begin(),
                            chains[c].energies[p].end());
    }
  }
  ds.meta["model"] = "ising";
  ds.meta["model.L"] = std::to_string(L);
  ds.meta["model.c_nn"] = "-1";
  ds.meta["seed"] = std::to_string(seed);
  ds.meta["schedule.n_chains"] = std::to_string(sched.n_chains);
  ds.meta["schedule.equilibration"] = std::to_string(sched.equilibration_steps);
  ds.meta["schedule.samples_per_t"] = std::to_string(sched.samples_per_temperature);
  ds.meta["rng"] = "splitmix64-counter";
  ds.meta["geometry"] = "grid2d:" + std::to_string(L) + "x" + std::to_string(L);
  ds.validate();
  return ds;
}

namespace {

struct SimOutput {
  std::vector<std::vector<Word>> packed;     // per lambda1 index
  std::vector<std::vector<double>> energies;
};

SimOutput run_isnnn_sim(int L, double j1, double j2,
                        const std::vector<double>& temps,
                        const IsnnnSchedule& schedule, CounterRng rng) {
  const int n_t = static_cast<int>(temps.size());
  std::vector<IsingLattice> chains;
  chains.reserve(n_t);
  for (int i = 0; i < n_t; ++i) {
    chains.emplace_back(L, j1, j2);
    chains.back().randomize(rng);
  }

  int sweep_index = 0;
  auto pt_sweep = [&](double t_scale) {
    for (int i = 0; i < n_t; ++i) {
      const double beta = 1.0 / (t_scale * temps[i]);
      chains[i].metropolis_sweep(beta, rng);
      chains[i].line_update_pass(beta, rng);
    }
    // neighbour swaps, even/odd pairing alternating per sweep
    for (int i = sweep_index % 2; i + 1 < n_t; i += 2) {
      const double beta_i = 1.0 / (t_scale * temps[i]);
      const double beta_j = 1.0 / (t_scale * temps[i + 1]);
      const double d_beta = beta_i - beta_j;
      const double d_e = chains[i].energy() - chains[i + 1].energy();
      if (rng.uniform() < std::exp(std::min(0.0, d_beta * d_e)))
        IsingLattice::swap_configurations(chains[i], chains[i + 1]);
    }
    ++sweep_index;
  };

  for (int s = 0; s < schedule.anneal_sweeps; ++s) pt_sweep(0.5);
  for (int s = 0; s < schedule.reheat_sweeps; ++s) pt_sweep(1.0);

  SimOutput out;
  out.packed.resize(n_t);
  out.energies.resize(n_t);
  for (int sample = 0; sample < schedule.samples_per_sim; ++sample) {
    if (sample > 0)
      for (int s = 0; s < schedule.inter_sample_sweeps; ++s) pt_sweep(1.0);
    for (int i = 0; i < n_t; ++i) {
      const bool flip = rng.bernoulli(0.5);
      const int sx = static_cast<int>(rng.below(L));
      const int sy = static_cast<int>(rng.below(L));
      auto bits = chains[i].packed(flip, sx, sy);
      out.packed[i].insert(out.packed[i].end(), bits.begin(), bits.end());
      out.energies[i].push_back(chains[i].energy());
    }
  }
  return out;
}

}  // namespace

SampleDataset isnnn_generate(int L, const ParameterGrid& grid,
                             const IsnnnSchedule& schedule, std::uint64_t seed,
                             int workers) {
  require(L >= 3, "isnnn_generate needs L >= 3");
  require(grid.dims == 2, "isnnn_generate needs a 2D grid");
  require(grid.min_coord() > 0.0, "lambda1 = 0 gives T = 0; use a grid with coord > 0");

  const int ppa = grid.points_per_axis;
  std::vector<double> temps(ppa);
  for (int l = 0; l < ppa; ++l) temps[l] = 2.5 * grid.coord(l);

  const int n_jobs = ppa * schedule.n_sims;
  std::vector<SimOutput> sims(n_jobs);
  CounterRng root(seed, 0x6e6e6e69);  // "nnni"
  parallel_for(n_jobs, workers, [&](std::size_t job) {
    const int l0 = static_cast<int>(job) / schedule.n_sims;
    const double j1 = grid.coord(l0);
    sims[job] = run_isnnn_sim(L, j1, 1.0 - j1, temps, schedule, root.split(job));
  });

  SampleDataset ds;
  ds.grid = grid;
  ds.n_bits = L * L;
  ds.samples.resize(grid.n_points());
  ds.energies.resize(grid.n_points());
  for (int l0 = 0; l0 < ppa; ++l0) {
    for (int sim = 0; sim < schedule.n_sims; ++sim) {
      const SimOutput& so = sims[l0 * schedule.n_sims + sim];
      for (int l1 = 0; l1 < ppa; ++l1) {
        const std::int64_t p = grid.index(l0, l1);
        ds.samples[p].insert(ds.samples[p].end(), so.packed[l1].begin(),
                             so.packed[l1].end());
        ds.energies[p].insert(ds.energies[p].end(), so.energies[l1].begin(),
                              so.energies[l1].end());
      }
    }
  }
  ds.meta["model"] = "isnnn";
  ds.meta["model.L"] = std::to_string(L);
  ds.meta["seed"] = std::to_string(seed);
  ds.meta["schedule.n_sims"] = std::to_string(schedule.n_sims);
  ds.meta["schedule.anneal"] = std::to_string(schedule.anneal_sweeps);
  ds.meta["schedule.reheat"] = std::to_string(schedule.reheat_sweeps);
  ds.meta["schedule.gap"] = std::to_string(schedule.inter_sample_sweeps);
  ds.meta["rng"] = "splitmix64-counter";
  ds.meta["geometry"] = "grid2d:" + std::to_string(L) + "x" + std::to_string(L);
  ds.validate();
  return ds;
}

DiscreteDistribution exact_enumeration_distribution(int L, double c_nn,
                                                    double c_nnn, double c_field,
                                                    double temperature) {
  require(temperature > 0.0, "temperature must be positive");
  auto energies = exact_enumeration_energies(L, c_nn, c_nnn, c_field);
  double e_min = energies[0];
  for (double e : energies) e_min = std::min(e_min, e);
  DiscreteDistribution d;
  d.probs.resize(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    d.probs[i] = std::exp(-(energies[i] - e_min) / temperature);
    z += d.probs[i];
  }
  for (auto& p : d.probs) p /= z;
  return d;
}

std::vector<double> exact_enumeration_energies(int L, double c_nn, double c_nnn,
                                               double c_field) {
  const int n = L * L;
  require(n <= 24, "exact enumeration limited to 2^(L^2) <= 2^24");
  IsingLattice lat(L, c_nn, c_nnn, c_field);
  std::vector<signed char> spins(n);
  std::vector<double> energies(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < energies.size(); ++z) {
    for (int i = 0; i < n; ++i) spins[i] = (z >> i) & 1 ? 1 : -1;
    lat.set_configuration(spins);
    energies[z] = lat.energy();
  }
  return energies;
}

}  // namespace fimlab
