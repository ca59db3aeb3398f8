#include "fimlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fimlab/errors.hpp"
#include "fimlab/manifest.hpp"
#include "fimlab/rng.hpp"
#include "fimlab/version.hpp"

namespace fimlab {

namespace {

constexpr char kMagic[4] = {'F', 'I', 'M', 'L'};
constexpr std::uint8_t kPayloadVersion = 1;

void write_u64_le(std::string& out, Word w) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
}

Word read_u64_le(const unsigned char* p) {
  Word w = 0;
  for (int b = 0; b < 8; ++b) w |= Word{p[b]} << (8 * b);
  return w;
}

void write_f64_le(std::string& out, double x) {
  Word w;
  std::memcpy(&w, &x, 8);
  write_u64_le(out, w);
}

double read_f64_le(const unsigned char* p) {
  Word w = read_u64_le(p);
  double x;
  std::memcpy(&x, &w, 8);
  return x;
}

std::string format_counts(const SampleDataset& d) {
  const std::int64_t n = d.grid.n_points();
  bool uniform = true;
  for (std::int64_t p = 1; p < n; ++p)
    if (d.count(p) != d.count(0)) uniform = false;
  if (uniform) return std::to_string(d.count(0));
  std::string s;
  for (std::int64_t p = 0; p < n; ++p) {
    if (p) s += ',';
    s += std::to_string(d.count(p));
  }
  return s;
}

std::vector<int> parse_counts(const std::string& s, std::int64_t n_points) {
  std::vector<int> counts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) counts.push_back(std::stoi(tok));
  if (counts.size() == 1) counts.assign(n_points, counts[0]);
  if (static_cast<std::int64_t>(counts.size()) != n_points)
    throw format_error("manifest counts length does not match grid points");
  return counts;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int words_for_bits(int n_bits) { return (n_bits + 63) / 64; }

std::int64_t SampleDataset::total_samples() const {
  std::int64_t total = 0;
  for (std::int64_t p = 0; p < grid.n_points(); ++p) total += count(p);
  return total;
}

void SampleDataset::validate() const {
  grid.validate();
  require(n_bits >= 1, "dataset needs n_bits >= 1");
  const std::int64_t n = grid.n_points();
  require(static_cast<std::int64_t>(samples.size()) == n,
          "dataset sample column does not match grid");
  const int w = words_per_sample();
  for (std::int64_t p = 0; p < n; ++p) {
    require(samples[p].size() % w == 0, "ragged sample block");
    require(count(p) >= 1, "every grid point needs at least one sample");
    // No bits may be set beyond n_bits.
    if (n_bits % 64 != 0) {
      const Word mask = ~((Word{1} << (n_bits % 64)) - 1);
      for (int i = 0; i < count(p); ++i)
        require((sample(p, i)[w - 1] & mask) == 0,
                "sample has bits set beyond n_bits");
    }
  }
  if (has_energies()) {
    require(static_cast<std::int64_t>(energies.size()) == n, "energy column shape");
    for (std::int64_t p = 0; p < n; ++p)
      require(static_cast<int>(energies[p].size()) == count(p), "energy column shape");
  }
  if (has_split()) {
    require(static_cast<std::int64_t>(split.size()) == n, "split column shape");
    for (std::int64_t p = 0; p < n; ++p)
      require(static_cast<int>(split[p].size()) == count(p), "split column shape");
  }
}

void save_dataset(const SampleDataset& dataset, const std::string& base_path) {
  dataset.validate();

  std::string manifest;
  manifest += "format=fimlab-dataset\n";
  manifest += "version=1\n";
  manifest += "dims=" + std::to_string(dataset.grid.dims) + "\n";
  manifest += "resolution=" + std::to_string(dataset.grid.resolution) + "\n";
  manifest += "offset=" + format_double(dataset.grid.offset) + "\n";
  manifest += "points_per_axis=" + std::to_string(dataset.grid.points_per_axis) + "\n";
  manifest += "n_bits=" + std::to_string(dataset.n_bits) + "\n";
  manifest += "counts=" + format_counts(dataset) + "\n";
  manifest += "energies=" + std::string(dataset.has_energies() ? "1" : "0") + "\n";
  manifest += "splits=" + std::string(dataset.has_split() ? "1" : "0") + "\n";
  manifest += "software=" + std::string(kVersionString) + "\n";
  for (const auto& [k, v] : dataset.meta) manifest += k + "=" + v + "\n";

  std::string payload;
  payload.append(kMagic, 4);
  payload.push_back(static_cast<char>(kPayloadVersion));
  const int w = dataset.words_per_sample();
  const std::int64_t n = dataset.grid.n_points();
  for (std::int64_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < dataset.samples[p].size(); ++i)
      write_u64_le(payload, dataset.samples[p][i]);
  if (dataset.has_energies())
    for (std::int64_t p = 0; p < n; ++p)
      for (double e : dataset.energies[p]) write_f64_le(payload, e);
  if (dataset.has_split())
    for (std::int64_t p = 0; p < n; ++p)
      for (std::uint8_t t : dataset.split[p]) payload.push_back(static_cast<char>(t));
  (void)w;

  {
    std::ofstream f(base_path + ".manifest", std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open for writing: " + base_path + ".manifest");
    f << manifest;
    if (!f) throw io_error("short write: " + base_path + ".manifest");
  }
  {
    std::ofstream f(base_path + ".fiml", std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open for writing: " + base_path + ".fiml");
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!f) throw io_error("short write: " + base_path + ".fiml");
  }
}

SampleDataset load_dataset(const std::string& base_path) {
  auto kv = read_key_value_file(base_path + ".manifest");
  auto need = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end())
      throw format_error(base_path + ".manifest: missing key '" + key + "'");
    return it->second;
  };
  if (need("format") != "fimlab-dataset")
    throw format_error(base_path + ".manifest: not a fimlab dataset manifest");
  if (need("version") != "1")
    throw format_error(base_path + ".manifest: unsupported manifest version");

  SampleDataset d;
  d.grid.dims = std::stoi(need("dims"));
  d.grid.resolution = std::stoi(need("resolution"));
  d.grid.offset = std::stod(need("offset"));
  d.grid.points_per_axis = std::stoi(need("points_per_axis"));
  d.grid.validate();
  d.n_bits = std::stoi(need("n_bits"));
  const std::int64_t n = d.grid.n_points();
  std::vector<int> counts = parse_counts(need("counts"), n);
  const bool has_energies = need("energies") == "1";
  const bool has_split = need("splits") == "1";
  for (const char* structural :
       {"format", "version", "dims", "resolution", "offset", "points_per_axis",
        "n_bits", "counts", "energies", "splits", "software"})
    kv.erase(structural);
  d.meta = std::move(kv);

  std::ifstream f(base_path + ".fiml", std::ios::binary);
  if (!f) throw io_error("cannot open: " + base_path + ".fiml");
  std::string payload((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());

  const int w = d.words_per_sample();
  std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  std::size_t expected = 5 + static_cast<std::size_t>(total) * w * 8;
  if (has_energies) expected += static_cast<std::size_t>(total) * 8;
  if (has_split) expected += static_cast<std::size_t>(total);
  if (payload.size() < 5 || std::memcmp(payload.data(), kMagic, 4) != 0)
    throw format_error(base_path + ".fiml: bad magic");
  if (static_cast<std::uint8_t>(payload[4]) != kPayloadVersion)
    throw format_error(base_path + ".fiml: unsupported payload version " +
                       std::to_string(static_cast<int>(payload[4])));
  if (payload.size() != expected)
    throw format_error(base_path + ".fiml: truncated payload, expected " +
                       std::to_string(expected) + " bytes, got " +
                       std::to_string(payload.size()));

  const unsigned char* p = reinterpret_cast<const unsigned char*>(payload.data()) + 5;
  d.samples.resize(n);
  for (std::int64_t pt = 0; pt < n; ++pt) {
    d.samples[pt].resize(static_cast<std::size_t>(counts[pt]) * w);
    for (auto& word : d.samples[pt]) {
      word = read_u64_le(p);
      p += 8;
    }
  }
  if (has_energies) {
    d.energies.resize(n);
    for (std::int64_t pt = 0; pt < n; ++pt) {
      d.energies[pt].resize(counts[pt]);
      for (auto& e : d.energies[pt]) {
        e = read_f64_le(p);
        p += 8;
      }
    }
  }
  if (has_split) {
    d.split.resize(n);
    for (std::int64_t pt = 0; pt < n; ++pt) {
      d.split[pt].resize(counts[pt]);
      for (auto& t : d.split[pt]) t = static_cast<std::uint8_t>(*p++);
    }
  }
  d.validate();
  return d;
}

SampleDataset split_train_test(const SampleDataset& dataset, double fraction,
                               std::uint64_t seed) {
  require(fraction > 0.0 && fraction < 1.0, "split fraction must be in (0, 1)");
  SampleDataset out = dataset;
  const std::int64_t n = out.grid.n_points();
  out.split.assign(n, {});
  CounterRng root(seed, 0x73706c69);  // "spli"
  for (std::int64_t p = 0; p < n; ++p) {
    const int c = out.count(p);
    std::vector<int> order(c);
    std::iota(order.begin(), order.end(), 0);
    CounterRng rng = root.split(static_cast<std::uint64_t>(p));
    rng.shuffle(order.data(), order.size());
    const int n_train = static_cast<int>(std::llround(fraction * c));
    out.split[p].assign(c, kSplitTest);
    for (int i = 0; i < n_train; ++i) out.split[p][order[i]] = kSplitTrain;
  }
  return out;
}

}  // namespace fimlab
