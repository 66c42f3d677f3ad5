#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "riso/agents.hpp"
#include "riso/grasping.hpp"
#include "riso/inference.hpp"
#include "riso/world.hpp"

namespace riso {

struct SessionConfig {
  Mode mode = Mode::shared;
  double alpha = 0.4;   // ignored in human mode
  double beta = 5.0;    // inference rationality
  std::uint64_t seed = 0;
  long max_ticks = 0;   // 0: budget_per_object * N / dt
  /// Shared mode with assistance forced to zero; used to check that the
  /// arbitration reduces exactly to direct teleoperation.
  bool zero_assist = false;
};

/// Session settings taken from the scenario's assistance block.
SessionConfig config_from_scenario(const Scenario &scenario, Mode mode);

struct TickRecord {
  long tick = 0;
  double time = 0.0;
  SystemState state;  // after the tick
  OperatorInput input;
  Vec3 a_R;
  Vec3 a;
  Belief belief;
  bool active = false;
  std::vector<GraspEvent> events;
};

enum class EpisodeStatus { running, complete, operator_done, budget_exhausted };
const char *to_string(EpisodeStatus status);
EpisodeStatus episode_status_from_string(const std::string &s);

struct EpisodeHeader {
  int version = 1;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  double beta = 0.0;
  Mode mode = Mode::human;
  double dt = 0.05;
};

struct EpisodeLog {
  EpisodeHeader header;
  Scenario scenario;
  std::vector<TickRecord> ticks;
  EpisodeStatus status = EpisodeStatus::running;
};

/// Single-writer fixed-step session. Each tick: read input, update the belief
/// (shared mode, nothing held), compute assistance, blend, step the world,
/// resolve grasps.
class Session {
 public:
  Session(Scenario scenario, SessionConfig config);

  TickRecord tick(const OperatorInput &raw_input);

  void reset();
  void set_mode(Mode mode);

  const Scenario &scenario() const { return scenario_; }
  const SessionConfig &config() const { return config_; }
  const SystemState &state() const { return state_; }
  const Belief &belief() const { return belief_; }
  const std::vector<std::string> &delivered() const { return delivered_; }
  EpisodeHeader header() const;
  double effective_alpha() const;

  bool all_delivered() const;
  long max_ticks() const;
  bool budget_exhausted() const { return state_.tick >= max_ticks(); }

 private:
  std::vector<std::string> active_objects() const;

  Scenario scenario_;
  SessionConfig config_;
  SystemState state_;
  Belief belief_;
  std::vector<std::string> delivered_;
};

/// Zero-input ticks until nothing is falling, so success reflects final
/// positions. No-op for a budget-exhausted episode.
void settle(Session &session, EpisodeLog &log);

/// Runs until every object is delivered, the operator reports done, or the
/// tick budget runs out.
EpisodeLog run_episode(const Scenario &scenario, Operator &op, const SessionConfig &config);

/// Re-simulates a log from its header and input columns.
EpisodeLog replay(const EpisodeLog &log);

/// True when both logs carry identical ticks (state, inputs, actions, belief,
/// events) and status.
bool identical(const EpisodeLog &a, const EpisodeLog &b);

struct ObjectOutcome {
  bool success = false;
  int items_in_bin = 0;
};

struct MetricsReport {
  double success_rate = 0.0;    // %
  double grasp_time = 0.0;      // s per object
  double grasp_distance = 0.0;  // m per object
  double input_time = 0.0;      // s per object
  std::map<std::string, ObjectOutcome> per_object;
  std::string status;
};

/// Study metrics. Time, distance, and input time only count ticks with the
/// end-effector over the table region. Throws std::invalid_argument for an
/// empty log.
MetricsReport compute_metrics(const EpisodeLog &log, const Scenario &scenario);

/// Stable FNV-1a digest of the scenario's canonical JSON.
std::string scenario_hash(const Scenario &scenario);

}  // namespace riso
