#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "fimlab/dataset.hpp"
#include "fimlab/errors.hpp"
#include "fimlab/manifest.hpp"
#include "fimlab/rng.hpp"

using namespace fimlab;

namespace {

std::string temp_base(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / "fimlab_store_tests";
  std::filesystem::create_directories(dir);
  return (dir / tag).string();
}

SampleDataset random_dataset(int dims, int ppa, int n_bits, int count,
                             std::uint64_t seed, bool with_energies) {
  SampleDataset d;
  d.grid = ParameterGrid::nodes(dims, ppa);
  d.n_bits = n_bits;
  const int w = d.words_per_sample();
  CounterRng rng(seed, 0xdada);
  d.samples.resize(d.grid.n_points());
  if (with_energies) d.energies.resize(d.grid.n_points());
  const Word top_mask =
      (n_bits % 64) ? ((Word{1} << (n_bits % 64)) - 1) : ~Word{0};
  for (std::int64_t p = 0; p < d.grid.n_points(); ++p) {
    d.samples[p].resize(static_cast<std::size_t>(count) * w);
    for (auto& word : d.samples[p]) word = rng.next_u64();
    for (int i = 0; i < count; ++i)
      d.samples[p][static_cast<std::size_t>(i + 1) * w - 1] &= top_mask;
    if (with_energies) {
      d.energies[p].resize(count);
      for (auto& e : d.energies[p]) e = rng.normal();
    }
  }
  return d;
}

}  // namespace

TEST_CASE("grid coordinates and center interleaving") {
  auto g = ParameterGrid::nodes(2, 64);
  CHECK(g.n_points() == 64 * 64);
  CHECK(g.coord(0) == 0.0);
  CHECK(g.coord(63) == doctest::Approx(63.0 / 64));
  auto c = g.centers();
  CHECK(c.points_per_axis == 63);
  CHECK(c.n_points() == 63 * 63);
  // center = node + 1/(2r) on each axis
  for (int l = 0; l + 1 < g.points_per_axis; ++l)
    CHECK(c.coord(l) == doctest::Approx(g.coord(l) + 0.5 / 64));

  auto rn = ParameterGrid::right_nodes(1, 200);
  CHECK(rn.coord(0) == doctest::Approx(1.0 / 200));
  CHECK(rn.coord(199) == doctest::Approx(1.0));
}

TEST_CASE("flat index order is axis-0 fastest") {
  auto g = ParameterGrid::nodes(2, 4);
  CHECK(g.index(1, 0) == 1);
  CHECK(g.index(0, 1) == 4);
  auto ij = g.indices(7);
  CHECK(ij[0] == 3);
  CHECK(ij[1] == 1);
}

TEST_CASE("word counts for packed samples") {
  CHECK(words_for_bits(24) == 1);
  CHECK(words_for_bits(64) == 1);
  CHECK(words_for_bits(65) == 2);
  CHECK(words_for_bits(400) == 7);
}

TEST_CASE("dataset round trip is bit exact") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto d = random_dataset(seed % 2 ? 1 : 2, 5, seed == 2 ? 400 : 24, 7, seed,
                            seed != 3);
    d.meta["model"] = "test";
    d.meta["seed"] = std::to_string(seed);
    auto base = temp_base("roundtrip" + std::to_string(seed));
    save_dataset(d, base);
    auto back = load_dataset(base);
    CHECK(back == d);
  }
}

TEST_CASE("split round trips through save/load") {
  auto d = random_dataset(1, 4, 10, 9, 99, false);
  auto tagged = split_train_test(d, 0.9, 7);
  auto base = temp_base("split_rt");
  save_dataset(tagged, base);
  CHECK(load_dataset(base) == tagged);
}

TEST_CASE("corrupt magic is rejected") {
  auto d = random_dataset(1, 3, 8, 2, 5, false);
  auto base = temp_base("magic");
  save_dataset(d, base);
  {
    std::fstream f(base + ".fiml", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  CHECK_THROWS_WITH_AS(load_dataset(base), doctest::Contains("bad magic"),
                       format_error);
}

TEST_CASE("truncated payload names expected and actual byte counts") {
  auto d = random_dataset(1, 3, 8, 2, 5, false);
  auto base = temp_base("trunc");
  save_dataset(d, base);
  auto size = std::filesystem::file_size(base + ".fiml");
  std::filesystem::resize_file(base + ".fiml", size - 3);
  try {
    load_dataset(base);
    FAIL("expected format_error");
  } catch (const format_error& e) {
    std::string msg = e.what();
    CHECK(msg.find(std::to_string(size)) != std::string::npos);
    CHECK(msg.find(std::to_string(size - 3)) != std::string::npos);
  }
}

TEST_CASE("split fraction must be inside (0,1)") {
  auto d = random_dataset(1, 3, 8, 10, 5, false);
  CHECK_THROWS_AS(split_train_test(d, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_train_test(d, 0.0, 1), std::invalid_argument);
}

TEST_CASE("split is deterministic, preserves samples, and hits the fraction") {
  auto d = random_dataset(1, 6, 12, 140, 11, false);
  auto a = split_train_test(d, 0.9, 42);
  auto b = split_train_test(d, 0.9, 42);
  CHECK(a == b);
  auto c = split_train_test(d, 0.9, 43);
  CHECK(c != a);
  for (std::int64_t p = 0; p < d.grid.n_points(); ++p) {
    CHECK(a.samples[p] == d.samples[p]);  // tags only, samples untouched
    int train = 0;
    for (auto t : a.split[p]) train += t == kSplitTrain;
    CHECK(train == 126);  // 0.9 * 140
  }
}

TEST_CASE("run manifest round trips argv and info") {
  RunManifest m;
  m.argv = {"generate", "tfim", "--n", "6", "--seed", "1"};
  m.info["outputs"] = "somewhere";
  auto path = temp_base("run.manifest");
  m.save(path);
  auto back = RunManifest::load(path);
  CHECK(back.argv == m.argv);
  CHECK(back.info.at("outputs") == "somewhere");
}

TEST_CASE("counter rng streams are independent of call order") {
  CounterRng a(1, 2, 3);
  CounterRng b(1, 2, 3);
  CHECK(a.next_u64() == b.next_u64());
  // split() depends only on the key, not on how much was consumed
  auto s1 = a.split(7);
  (void)a.next_u64();
  auto s2 = a.split(7);
  CHECK(s1.next_u64() == s2.next_u64());
  // distinct stream ids give distinct streams
  CHECK(a.split(1).next_u64() != a.split(2).next_u64());
  // uniform stays in [0, 1)
  CounterRng u(9);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
