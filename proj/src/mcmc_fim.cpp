#include "fimlab/mcmc_fim.hpp"

#include <cmath>

#include "fimlab/errors.hpp"
#include "fimlab/rng.hpp"

namespace fimlab {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Core estimate on index subsets (identity subsets for the point estimate,
// resampled subsets for the bootstrap). w = E+~ - E-~ per sample.
double estimate(const std::vector<double>& w_minus,
                const std::vector<double>& w_plus,
                const std::vector<std::int64_t>& idx_minus,
                const std::vector<std::int64_t>& idx_plus, double delta) {
  double a = 0.0;  // E_{x ~ P+}[P-~/P+~] -> Z-~/Z+~
  for (auto i : idx_plus) a += std::exp(w_plus[i]);
  a /= static_cast<double>(idx_plus.size());
  double b = 0.0;  // E_{x ~ P-}[P+~/P-~] -> Z+~/Z-~
  for (auto i : idx_minus) b += std::exp(-w_minus[i]);
  b /= static_cast<double>(idx_minus.size());
  const double log_zr = 0.5 * (std::log(a) - std::log(b));

  double stat = 0.0;
  for (auto i : idx_minus) stat += 1.0 - 1.0 / std::cosh(-0.5 * w_minus[i] + 0.5 * log_zr);
  for (auto i : idx_plus) stat += 1.0 - 1.0 / std::cosh(-0.5 * w_plus[i] + 0.5 * log_zr);
  stat /= static_cast<double>(idx_minus.size() + idx_plus.size());
  return 8.0 / (delta * delta) * stat;
}

}  // namespace

McmcFimResult fim_from_mcmc(const McmcFimSide& minus, const McmcFimSide& plus,
                            double delta, int bootstrap, std::uint64_t seed) {
  require(delta > 0.0, "delta must be positive");
  require(!minus.e_self.empty() && !plus.e_self.empty(),
          "both sample sets must be nonempty");
  require(minus.e_self.size() == minus.e_other.size() &&
              plus.e_self.size() == plus.e_other.size(),
          "energy columns must have equal lengths");

  const double shift_minus = mean_of(minus.e_self);
  const double shift_plus = mean_of(plus.e_self);

  const std::int64_t n_m = static_cast<std::int64_t>(minus.e_self.size());
  const std::int64_t n_p = static_cast<std::int64_t>(plus.e_self.size());
  std::vector<double> w_minus(n_m), w_plus(n_p);
  double max_abs_w = 0.0;
  for (std::int64_t i = 0; i < n_m; ++i) {
    w_minus[i] = (minus.e_other[i] - shift_plus) - (minus.e_self[i] - shift_minus);
    max_abs_w = std::max(max_abs_w, std::abs(w_minus[i]));
  }
  for (std::int64_t i = 0; i < n_p; ++i) {
    w_plus[i] = (plus.e_self[i] - shift_plus) - (plus.e_other[i] - shift_minus);
    max_abs_w = std::max(max_abs_w, std::abs(w_plus[i]));
  }
  if (max_abs_w > 690.0)
    throw numeric_error(
        "energy spread " + std::to_string(max_abs_w) +
        " exceeds the exp range after mean shift; points are too far apart");

  std::vector<std::int64_t> all_m(n_m), all_p(n_p);
  for (std::int64_t i = 0; i < n_m; ++i) all_m[i] = i;
  for (std::int64_t i = 0; i < n_p; ++i) all_p[i] = i;

  McmcFimResult result;
  result.g = estimate(w_minus, w_plus, all_m, all_p, delta);
  result.n_samples = n_m + n_p;
  {
    double a = 0.0, b = 0.0;
    for (double w : w_plus) a += std::exp(w);
    for (double w : w_minus) b += std::exp(-w);
    result.log_z_ratio =
        0.5 * (std::log(a / static_cast<double>(n_p)) - std::log(b / static_cast<double>(n_m)));
  }

  if (bootstrap > 0) {
    CounterRng rng(seed, 0x626f6f74);  // "boot"
    double sum = 0.0, sum_sq = 0.0;
    std::vector<std::int64_t> im(n_m), ip(n_p);
    for (int rep = 0; rep < bootstrap; ++rep) {
      for (auto& i : im) i = static_cast<std::int64_t>(rng.below(n_m));
      for (auto& i : ip) i = static_cast<std::int64_t>(rng.below(n_p));
      const double g = estimate(w_minus, w_plus, im, ip, delta);
      sum += g;
      sum_sq += g * g;
    }
    const double mean = sum / bootstrap;
    result.std_error = std::sqrt(std::max(0.0, sum_sq / bootstrap - mean * mean));
  }
  return result;
}

McmcFimSide side_from_raw_energies(const std::vector<double>& raw, double t_self,
                                   double t_other) {
  require(t_self > 0.0 && t_other > 0.0, "temperatures must be positive");
  McmcFimSide side;
  side.e_self.reserve(raw.size());
  side.e_other.reserve(raw.size());
  for (double e : raw) {
    side.e_self.push_back(e / t_self);
    side.e_other.push_back(e / t_other);
  }
  return side;
}

TemperatureFimProfile ising_fim_profile(const SampleDataset& dataset,
                                        int bootstrap, std::uint64_t seed) {
  require(dataset.grid.dims == 1, "temperature profile needs a 1D dataset");
  require(dataset.has_energies(), "dataset has no recorded energies");
  const ParameterGrid& grid = dataset.grid;

  TemperatureFimProfile profile;
  profile.field = FimField::zeros(grid.centers(), Provenance::Mcmc);
  profile.std_errors.resize(grid.points_per_axis - 1);
  const double delta = grid.spacing();
  CounterRng root(seed, 0x70726f66);  // "prof"
  for (int l = 0; l + 1 < grid.points_per_axis; ++l) {
    const double t_minus = 4.0 * grid.coord(l);
    const double t_plus = 4.0 * grid.coord(l + 1);
    auto minus = side_from_raw_energies(dataset.energies[l], t_minus, t_plus);
    auto plus = side_from_raw_energies(dataset.energies[l + 1], t_plus, t_minus);
    auto r = fim_from_mcmc(minus, plus, delta, bootstrap, root.split(l).next_u64());
    profile.field.entries[l][0] = std::max(0.0, r.g);
    profile.std_errors[l] = r.std_error;
  }
  return profile;
}

}  // namespace fimlab
