#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "riso/inference.hpp"
#include "riso/world.hpp"

namespace riso {

enum class Mode { human, shared };

const char *to_string(Mode mode);
Mode mode_from_string(const std::string &s);

/// Seeded random stream with platform-independent draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Softmax sample over `logits`; infinite entries act as an argmax (first
/// maximum wins).
std::size_t sample_softmax(const std::vector<double> &logits, Rng &rng);

/// Logits of the discrete action set for moving grasp frame `g` toward `goal`.
std::vector<double> boltzmann_logits(const SystemState &state, const Pose &goal, const GraspType &g,
                                     const HumanModel &model, const Scenario &scenario);

/// Samples a velocity v_max * u from the Boltzmann policy toward `goal`.
Vec3 sample_boltzmann_action(const SystemState &state, const Pose &goal, const GraspType &g,
                             const HumanModel &model, const Scenario &scenario, Rng &rng);

/// Tolerances and rates for the grasp phase of the single-target operator.
struct GraspPhaseConfig {
  double align_xy = 0.012;  // m, when the operator believes it is aligned
  double align_z = 0.008;   // m
  double dP_rate = 2.0;     // psi per tick
  double df_rate = 5.0;     // N per tick
  double f_target = 40.0;   // N
};

/// True when grasp frame `g` sits on `object` within the configured band.
bool aligned(const SystemState &state, const Pose &object, const GraspType &g,
             const GraspPhaseConfig &cfg);

/// One tick of a noisily-optimal operator fixed on (object, grasp): moves by
/// Boltzmann sampling until aligned, then works the gripper channel (pressure
/// down for a pad, force up for the rigid pinch).
OperatorInput boltzmann_operator(const SystemState &state, const Intent &target, double beta_agent,
                                 Rng &rng, const Scenario &scenario,
                                 const GraspPhaseConfig &cfg = {});

/// Read-only view handed to operators each tick.
struct OperatorContext {
  const Scenario &scenario;
  const SystemState &state;
  Mode mode;
  const std::vector<std::string> &delivered;  // objects released into the bin
};

class Operator {
 public:
  virtual ~Operator() = default;
  virtual OperatorInput act(const OperatorContext &ctx) = 0;
  /// True once the operator has nothing left to do.
  virtual bool done() const { return false; }
};

struct ScriptEntry {
  double t = 0.0;
  OperatorInput input;
};

/// Replays timed inputs. An entry applies to the tick whose start time is the
/// last one not after `t`; later entries for the same tick win; ticks without
/// an entry get zero input.
class ScriptOperator : public Operator {
 public:
  /// Throws InputError if timestamps decrease or values are non-finite.
  ScriptOperator(std::vector<ScriptEntry> script, double dt);
  OperatorInput act(const OperatorContext &ctx) override;
  OperatorInput input_for_tick(long tick) const;
  bool done() const override { return false; }
  long last_tick() const;

 private:
  std::vector<std::pair<long, OperatorInput>> by_tick_;
};

/// Deterministic pick-and-place of one object with one grasp type: hover,
/// descend onto the top surface, grip at full force or suction, lift, carry
/// above the bin, release. Gives up after the grip saturates without an
/// attachment.
class PickPlaceRoutine : public Operator {
 public:
  PickPlaceRoutine(std::string object_id, std::string grasp_tag, double hover = 0.05);
  OperatorInput act(const OperatorContext &ctx) override;
  bool done() const override { return stage_ == Stage::finished; }
  bool picked() const { return picked_; }

 private:
  enum class Stage { hover, descend, grip, carry, release, finished };

  std::string object_id_;
  std::string grasp_tag_;
  double hover_;
  Stage stage_ = Stage::hover;
  int wait_ = 0;
  bool picked_ = false;
};

/// Behavior knobs of the synthetic study participant.
struct ParticipantConfig {
  double beta_agent = 3.0;
  GraspPhaseConfig grasp;
  double patience = 2.0;       // s; acceptable time-to-goal when letting the robot drive
  double min_closing_speed = 0.02;  // m/s
  int commit_ticks = 10;       // ticks of own input before checking the robot again
  double drift_prob = 0.1;     // chance per grip tick of an unintended stick nudge
  int grip_grace_ticks = 4;    // extra wait after full pressure/force before retrying
  int max_attempts = 3;
  double bin_margin = 0.3;     // fraction of the bin half-size kept clear at release
};

/// Synthetic participant that clears the table one object at a time: reach,
/// grip, carry to the bin, release. Acts as a noisily-optimal human. In shared
/// mode it lets the robot drive while the robot is closing in on its goal.
class ParticipantOperator : public Operator {
 public:
  ParticipantOperator(ParticipantConfig cfg, std::uint64_t seed);
  OperatorInput act(const OperatorContext &ctx) override;
  bool done() const override { return done_; }

  std::optional<Intent> current_target() const { return target_; }
  const std::vector<std::string> &abandoned() const { return abandoned_; }

 private:
  enum class Phase { choose, reach, grip, transport, release, reset };

  Vec3 drive(const OperatorContext &ctx, const Pose &goal, const GraspType &frame_type,
             const Pose &frame_now);
  bool choose_target(const OperatorContext &ctx);
  void abandon_target();

  ParticipantConfig cfg_;
  Rng rng_;
  Phase phase_ = Phase::choose;
  std::optional<Intent> target_;
  std::vector<std::string> abandoned_;
  int attempts_ = 0;
  int wait_ticks_ = 0;
  bool resting_ = false;
  int commit_ = 0;
  std::optional<double> prev_distance_;
  bool done_ = false;
};

}  // namespace riso
