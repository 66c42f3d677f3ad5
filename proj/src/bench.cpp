#include "riso/bench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "riso/io.hpp"

namespace riso {

EpisodeLog run_participant_episode(const Scenario &scenario, Mode mode, double alpha, double beta,
                                   std::uint64_t seed, const ParticipantConfig &participant) {
  SessionConfig cfg;
  cfg.mode = mode;
  cfg.alpha = mode == Mode::human ? 1.0 : alpha;
  cfg.beta = beta;
  cfg.seed = seed;
  ParticipantOperator op(participant, seed);
  return run_episode(scenario, op, cfg);
}

std::vector<BenchCell> run_bench(const Scenario &scenario, const BenchSpec &spec) {
  if (spec.modes.empty() || spec.alphas.empty() || spec.betas.empty() || spec.seeds.empty())
    throw ConfigError("bench sweep lists must be nonempty");
  std::vector<BenchCell> cells;
  for (Mode mode : spec.modes) {
    const std::vector<double> alphas = mode == Mode::human ? std::vector<double>{1.0} : spec.alphas;
    for (double alpha : alphas)
      for (double beta : spec.betas)
        for (std::uint64_t seed : spec.seeds) {
          BenchCell cell;
          cell.mode = mode;
          cell.alpha = alpha;
          cell.beta = beta;
          cell.seed = seed;
          try {
            const EpisodeLog log = run_participant_episode(scenario, mode, alpha, beta, seed, spec.participant);
            cell.metrics = compute_metrics(log, scenario);
            cell.ok = true;
          } catch (const std::exception &e) {
            cell.error = e.what();
          }
          cells.push_back(std::move(cell));
        }
  }
  return cells;
}

void write_bench_outputs(const std::vector<BenchCell> &cells, const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream csv(fs::path(dir) / "aggregate.csv");
  if (!csv) throw ConfigError("cannot write to '" + dir + "'");
  csv << "mode,alpha,beta,seed,ok,success_rate,grasp_time,grasp_distance,input_time,status,error\n";
  for (const auto &c : cells) {
    std::ostringstream name;
    name << to_string(c.mode) << "_a" << c.alpha << "_b" << c.beta << "_s" << c.seed << ".json";
    json j = {{"mode", to_string(c.mode)}, {"alpha", c.alpha}, {"beta", c.beta},
              {"seed", c.seed},            {"ok", c.ok}};
    if (c.ok) j["metrics"] = to_json(c.metrics);
    else j["error"] = c.error;
    std::ofstream(fs::path(dir) / name.str()) << j.dump(2) << '\n';

    std::string err = c.error;
    for (char &ch : err)
      if (ch == ',' || ch == '\n') ch = ' ';
    csv << to_string(c.mode) << ',' << c.alpha << ',' << c.beta << ',' << c.seed << ',' << (c.ok ? 1 : 0) << ','
        << c.metrics.success_rate << ',' << c.metrics.grasp_time << ',' << c.metrics.grasp_distance << ','
        << c.metrics.input_time << ',' << c.metrics.status << ',' << err << '\n';
  }
}

}  // namespace riso
