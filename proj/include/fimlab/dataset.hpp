#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fimlab/grid.hpp"

namespace fimlab {

using Word = std::uint64_t;

/// Words needed for one packed sample of n_bits bits.
int words_for_bits(int n_bits);

inline bool get_bit(const Word* sample, int bit) {
  return (sample[bit >> 6] >> (bit & 63)) & 1u;
}

inline void set_bit(Word* sample, int bit, bool value) {
  if (value)
    sample[bit >> 6] |= Word{1} << (bit & 63);
  else
    sample[bit >> 6] &= ~(Word{1} << (bit & 63));
}

constexpr std::uint8_t kSplitTest = 0;
constexpr std::uint8_t kSplitTrain = 1;

/// Per-grid-point packed bitstring samples. Bit i of a sample is lattice
/// site i, little-endian within 64-bit words. Energies (classical models
/// only) and train/test tags are optional parallel columns.
struct SampleDataset {
  ParameterGrid grid;
  int n_bits = 0;
  /// samples[p] holds count(p) packed samples back to back.
  std::vector<std::vector<Word>> samples;
  std::vector<std::vector<double>> energies;     // empty when absent
  std::vector<std::vector<std::uint8_t>> split;  // empty when absent
  /// Free-form metadata written to the manifest (model, seed, schedule...).
  std::map<std::string, std::string> meta;

  int words_per_sample() const { return words_for_bits(n_bits); }
  int count(std::int64_t point) const {
    return static_cast<int>(samples[point].size()) / words_per_sample();
  }
  const Word* sample(std::int64_t point, int i) const {
    return samples[point].data() + static_cast<std::size_t>(i) * words_per_sample();
  }
  Word* mutable_sample(std::int64_t point, int i) {
    return samples[point].data() + static_cast<std::size_t>(i) * words_per_sample();
  }
  bool has_energies() const { return !energies.empty(); }
  bool has_split() const { return !split.empty(); }
  std::int64_t total_samples() const;

  void validate() const;
  bool operator==(const SampleDataset&) const = default;
};

/// Writes base_path + ".manifest" (line-oriented key=value text) and
/// base_path + ".fiml" (magic "FIML", version byte, then per-point blocks of
/// packed little-endian words, followed by optional energy and split blocks).
void save_dataset(const SampleDataset& dataset, const std::string& base_path);

/// Exact inverse of save_dataset.
SampleDataset load_dataset(const std::string& base_path);

/// Returns a copy with per-sample train/test tags assigned by a seeded
/// shuffle within each point; round(fraction * count) samples per point are
/// tagged train. Sample order and contents are untouched.
SampleDataset split_train_test(const SampleDataset& dataset, double fraction,
                               std::uint64_t seed);

}  // namespace fimlab
