#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "riso/bench.hpp"
#include "riso/io.hpp"
#include "riso/scenarios.hpp"

using namespace riso;

namespace fs = std::filesystem;

TEST_CASE("single human cell") {
  BenchSpec spec;
  spec.modes = {Mode::human};
  spec.alphas = {0.2, 0.6};
  spec.seeds = {42};
  const auto cells = run_bench(canonical_scenario(), spec);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].ok);
  CHECK(cells[0].alpha == 1.0);
  CHECK(cells[0].seed == 42);
}

TEST_CASE("cells are reproducible") {
  BenchSpec spec;
  spec.seeds = {3, 4};
  const Scenario sc = canonical_scenario();
  const auto a = run_bench(sc, spec), b = run_bench(sc, spec);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i].metrics) == to_json(b[i].metrics));
}

TEST_CASE("empty sweeps are rejected") {
  BenchSpec spec;
  spec.seeds.clear();
  CHECK_THROWS_AS(run_bench(canonical_scenario(), spec), ConfigError);
}

TEST_CASE("a failing episode marks only its cell") {
  BenchSpec spec;
  spec.modes = {Mode::shared};
  spec.alphas = {0.4, 2.0};
  const auto cells = run_bench(canonical_scenario(), spec);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].ok);
  CHECK_FALSE(cells[1].ok);
  CHECK_FALSE(cells[1].error.empty());
}

TEST_CASE("assistance shortens time over the table on the canonical scene") {
  BenchSpec spec;
  for (std::uint64_t s = 0; s < 100; ++s) spec.seeds.push_back(s);
  const auto cells = run_bench(canonical_scenario(), spec);
  double human = 0, shared = 0;
  int n = 0;
  for (const auto &c : cells) {
    REQUIRE(c.ok);
    (c.mode == Mode::human ? human : shared) += c.metrics.grasp_time;
    n += c.mode == Mode::human;
  }
  MESSAGE("mean grasp time human " << human / n << " s, shared " << shared / n << " s");
  CHECK(shared < human);
}

TEST_CASE("outputs on disk") {
  BenchSpec spec;
  spec.seeds = {1};
  const auto cells = run_bench(canonical_scenario(), spec);
  const fs::path dir = fs::temp_directory_path() / "riso_bench_test";
  fs::remove_all(dir);
  write_bench_outputs(cells, dir.string());
  CHECK(fs::exists(dir / "aggregate.csv"));
  CHECK(fs::exists(dir / "human_a1_b5_s1.json"));
  std::ifstream csv(dir / "aggregate.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("mode,alpha,beta,seed,ok,success_rate,grasp_time,grasp_distance,input_time", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(csv, line);) rows += !line.empty();
  CHECK(rows == 2);
  fs::remove_all(dir);
}
