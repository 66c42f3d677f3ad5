// Command-line front end: live serving, headless benchmarks, validation, replay.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "riso/bench.hpp"
#include "riso/io.hpp"
#include "riso/scenarios.hpp"
#include "riso/server.hpp"

using namespace riso;

namespace {

template <class T>
std::vector<T> split_list(const std::string &s, T (*parse)(const std::string &)) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse(item));
  if (out.empty()) throw ConfigError("empty list '" + s + "'");
  return out;
}

double parse_double(const std::string &s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

Mode parse_mode(const std::string &s) { return mode_from_string(s); }

/// A file path, or one of the built-in names "canonical" and "study".
Scenario resolve_scenario(const std::string &what) {
  Scenario sc;
  if (what == "canonical") sc = canonical_scenario();
  else if (what == "study") sc = study_scenario();
  else sc = load_scenario(what);
  if (const char *env = std::getenv("SIM_SEED")) {
    try {
      sc.seed = std::stoull(env);
    } catch (const std::exception &) {
      throw ConfigError(std::string("SIM_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  sc.validate();
  return sc;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"RISO gripper shared-control simulator"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string mode_arg = "shared";
  double alpha = -1.0, beta = -1.0;

  auto *serve = app.add_subcommand("serve", "Run a live teleoperation session over a websocket");
  unsigned short port = 8765;
  std::string address = "127.0.0.1", serve_log;
  bool lockstep = false;
  serve->add_option("--scenario", scenario_arg, "Scenario JSON or built-in name")->required();
  serve->add_option("--mode", mode_arg, "human | shared");
  serve->add_option("--alpha", alpha, "Blend weight on the operator");
  serve->add_option("--beta", beta, "Inference rationality");
  serve->add_option("--port", port, "0 picks a free port");
  serve->add_option("--address", address);
  serve->add_option("--log", serve_log, "Write the NDJSON episode log here when an episode ends");
  serve->add_flag("--lockstep", lockstep, "One tick per input frame instead of wall-clock ticks");

  auto *bench = app.add_subcommand("bench", "Headless sweep with synthetic operators");
  std::string modes = "human,shared", alphas = "0.4", betas = "5", out = "bench_out";
  int seeds = 10;
  std::uint64_t seed0 = 0;
  double agent_beta = 3.0;
  bench->add_option("--scenario", scenario_arg)->required();
  bench->add_option("--modes", modes);
  bench->add_option("--alphas", alphas);
  bench->add_option("--betas", betas);
  bench->add_option("--seeds", seeds, "Number of seeds");
  bench->add_option("--first-seed", seed0);
  bench->add_option("--agent-beta", agent_beta, "Operator noise (Boltzmann rationality)");
  bench->add_option("--out", out);
  ParticipantConfig participant;
  bench->add_option("--patience", participant.patience, "Participant: acceptable robot time-to-goal, s");
  bench->add_option("--commit-ticks", participant.commit_ticks, "Participant: ticks of own input per intervention");
  bench->add_option("--drift-prob", participant.drift_prob, "Participant: chance of a stray nudge per grip tick");

  auto *validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--scenario", scenario_arg)->required();

  auto *replay_cmd = app.add_subcommand("replay", "Re-simulate a log and compare it with the recording");
  std::string log_path;
  replay_cmd->add_option("--log", log_path)->required();

  auto *run = app.add_subcommand("run", "One headless episode, scripted or synthetic");
  std::string script_path, run_out;
  std::uint64_t run_seed = 0;
  run->add_option("--scenario", scenario_arg)->required();
  run->add_option("--mode", mode_arg);
  run->add_option("--alpha", alpha);
  run->add_option("--beta", beta);
  run->add_option("--script", script_path, "Input script JSON; default is the synthetic participant");
  run->add_option("--seed", run_seed);
  run->add_option("--agent-beta", agent_beta);
  run->add_option("--out", run_out, "NDJSON log path")->required();

  auto *dump = app.add_subcommand("scenario", "Write a built-in scenario as JSON");
  std::string name = "canonical", dump_out;
  dump->add_option("--name", name, "canonical | study");
  dump->add_option("--out", dump_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      const Scenario sc = resolve_scenario(scenario_arg);
      ServerOptions opt;
      opt.address = address;
      opt.port = port;
      opt.lockstep = lockstep;
      opt.log_path = serve_log;
      opt.session = config_from_scenario(sc, parse_mode(mode_arg));
      if (alpha >= 0) opt.session.alpha = alpha;
      if (beta >= 0) opt.session.beta = beta;
      TeleopServer server(sc, opt);
      std::cout << "listening on ws://" << address << ':' << server.port() << std::endl;
      server.run();
    } else if (*bench) {
      const Scenario sc = resolve_scenario(scenario_arg);
      BenchSpec spec;
      spec.modes = split_list<Mode>(modes, parse_mode);
      spec.alphas = split_list<double>(alphas, parse_double);
      spec.betas = split_list<double>(betas, parse_double);
      if (seeds <= 0) throw ConfigError("--seeds must be positive");
      spec.seeds.clear();
      for (int i = 0; i < seeds; ++i) spec.seeds.push_back(seed0 + std::uint64_t(i));
      spec.participant = participant;
      spec.participant.beta_agent = agent_beta;
      const auto cells = run_bench(sc, spec);
      write_bench_outputs(cells, out);
      int failed = 0;
      for (const auto &c : cells) failed += c.ok ? 0 : 1;
      std::cout << cells.size() << " cells, " << failed << " failed, written to " << out << '\n';
    } else if (*validate) {
      const Scenario sc = resolve_scenario(scenario_arg);
      std::cout << "ok: " << sc.name << ", " << sc.objects.size() << " objects, hash " << scenario_hash(sc)
                << '\n';
    } else if (*replay_cmd) {
      const EpisodeLog rec = load_log(log_path);
      const EpisodeLog again = replay(rec);
      if (!identical(rec, again)) {
        std::cerr << "replay diverged from the recording\n";
        return 1;
      }
      std::cout << "replay identical over " << rec.ticks.size() << " ticks\n"
                << round_numbers(to_json(compute_metrics(rec, rec.scenario))).dump(2) << '\n';
    } else if (*run) {
      const Scenario sc = resolve_scenario(scenario_arg);
      SessionConfig cfg = config_from_scenario(sc, parse_mode(mode_arg));
      if (alpha >= 0) cfg.alpha = alpha;
      if (beta >= 0) cfg.beta = beta;
      EpisodeLog log;
      if (!script_path.empty()) {
        ScriptOperator op(load_script(script_path), sc.physics.dt);
        log = run_episode(sc, op, cfg);
      } else {
        ParticipantConfig pc;
        pc.beta_agent = agent_beta;
        cfg.seed = run_seed;
        log = run_participant_episode(sc, cfg.mode, cfg.alpha, cfg.beta, run_seed, pc);
      }
      save_log(log, run_out);
      std::cout << round_numbers(to_json(compute_metrics(log, sc))).dump(2) << '\n';
    } else if (*dump) {
      Scenario sc;
      if (name == "canonical") sc = canonical_scenario();
      else if (name == "study") sc = study_scenario();
      else throw ConfigError("unknown built-in scenario '" + name + "'");
      save_scenario(sc, dump_out);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
