#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riso/agents.hpp"
#include "riso/session.hpp"

namespace riso {

struct BenchSpec {
  std::vector<Mode> modes{Mode::human, Mode::shared};
  std::vector<double> alphas{0.4};
  std::vector<double> betas{5.0};
  std::vector<std::uint64_t> seeds{0};
  ParticipantConfig participant;
};

struct BenchCell {
  Mode mode = Mode::human;
  double alpha = 1.0;
  double beta = 5.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
};

/// One synthetic-participant episode.
EpisodeLog run_participant_episode(const Scenario &scenario, Mode mode, double alpha, double beta,
                                   std::uint64_t seed, const ParticipantConfig &participant);

/// Cross product of settings. Human mode always runs with alpha = 1 and is
/// evaluated once per (beta, seed). An episode that throws marks only its own
/// cell as failed.
std::vector<BenchCell> run_bench(const Scenario &scenario, const BenchSpec &spec);

/// One metrics JSON per cell plus `aggregate.csv` (one row per cell) in `dir`.
void write_bench_outputs(const std::vector<BenchCell> &cells, const std::string &dir);

}  // namespace riso
