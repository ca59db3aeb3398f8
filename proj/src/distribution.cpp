#include "fimlab/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "fimlab/errors.hpp"

namespace fimlab {

void DiscreteDistribution::validate() const {
  double sum = 0.0;
  for (double p : probs) {
    require(p >= 0.0, "distribution entries must be >= 0");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "distribution must sum to 1 within 1e-12");
}

namespace {

// Walker alias table over the nonzero outcomes.
struct AliasTable {
  std::vector<double> cut;
  std::vector<std::uint64_t> alias;
  std::vector<std::uint64_t> outcome;

  explicit AliasTable(const DiscreteDistribution& d) {
    for (std::uint64_t z = 0; z < d.size(); ++z)
      if (d.probs[z] > 0.0) outcome.push_back(z);
    const std::size_t m = outcome.size();
    cut.assign(m, 0.0);
    alias.assign(m, 0);
    std::vector<double> scaled(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += d.probs[outcome[i]];
    for (std::size_t i = 0; i < m; ++i) scaled[i] = d.probs[outcome[i]] * m / total;
    std::vector<std::size_t> small, large;
    for (std::size_t i = m; i > 0; --i)
      (scaled[i - 1] < 1.0 ? small : large).push_back(i - 1);
    while (!small.empty() && !large.empty()) {
      std::size_t s = small.back(), l = large.back();
      small.pop_back();
      cut[s] = scaled[s];
      alias[s] = static_cast<std::uint64_t>(l);
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::size_t i : large) cut[i] = 1.0;
    for (std::size_t i : small) cut[i] = 1.0;
  }

  std::uint64_t draw(CounterRng& rng) const {
    std::uint64_t slot = rng.below(outcome.size());
    double u = rng.uniform();
    std::size_t i = (u < cut[slot]) ? slot : alias[slot];
    return outcome[i];
  }
};

}  // namespace

std::vector<std::uint64_t> sample_outcomes(const DiscreteDistribution& dist,
                                           std::int64_t count, CounterRng rng) {
  dist.validate();
  std::vector<std::uint64_t> draws(count);
  std::vector<std::uint64_t> support;
  for (std::uint64_t z = 0; z < dist.size(); ++z)
    if (dist.probs[z] > 0.0) support.push_back(z);
  require(!support.empty(), "cannot sample from an empty support");

  if (support.size() > 4096) {
    AliasTable table(dist);
    for (auto& x : draws) x = table.draw(rng);
    return draws;
  }
  // Inverse CDF over the support.
  std::vector<double> cdf(support.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc += dist.probs[support[i]];
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);
  for (auto& x : draws) {
    double u = rng.uniform();
    std::size_t i = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (i >= support.size()) i = support.size() - 1;
    x = support[i];
  }
  return draws;
}

std::vector<Word> sample_bitstrings(const DiscreteDistribution& dist, int n_bits,
                                    std::int64_t count, CounterRng rng) {
  require(static_cast<std::size_t>(1) << std::min(n_bits, 62) >= dist.size() ||
              n_bits >= 63,
          "n_bits too small for outcome space");
  auto outcomes = sample_outcomes(dist, count, rng);
  const int w = words_for_bits(n_bits);
  std::vector<Word> packed(static_cast<std::size_t>(count) * w, 0);
  for (std::int64_t i = 0; i < count; ++i) packed[i * w] = outcomes[i];
  return packed;
}

}  // namespace fimlab
