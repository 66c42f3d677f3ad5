#include "riso/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riso/assist.hpp"

namespace riso {

const char *to_string(Mode mode) { return mode == Mode::human ? "human" : "shared"; }

Mode mode_from_string(const std::string &s) {
  if (s == "human") return Mode::human;
  if (s == "shared") return Mode::shared;
  throw InputError("unknown mode '" + s + "'");
}

std::size_t sample_softmax(const std::vector<double> &logits, Rng &rng) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logits) mx = std::max(mx, v);
  if (std::isinf(mx) && mx > 0) {
    for (std::size_t i = 0; i < logits.size(); ++i)
      if (logits[i] == mx) return i;
  }
  std::vector<double> w(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    w[i] = std::exp(logits[i] - mx);
    total += w[i];
  }
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u < w[i]) return i;
    u -= w[i];
  }
  return w.size() - 1;
}

std::vector<double> boltzmann_logits(const SystemState &state, const Pose &goal, const GraspType &g,
                                     const HumanModel &model, const Scenario &scenario) {
  const auto &dirs = action_directions();
  const bool greedy = std::isinf(model.beta);
  HumanModel m = model;
  if (greedy) m.beta = 1.0;
  std::vector<double> logits(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i)
    logits[i] = likelihood_logit(state, dirs[i] * scenario.physics.v_max, goal, g, m, scenario);
  if (greedy) {
    const double mx = *std::max_element(logits.begin(), logits.end());
    for (double &v : logits)
      v = v == mx ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return logits;
}

Vec3 sample_boltzmann_action(const SystemState &state, const Pose &goal, const GraspType &g,
                             const HumanModel &model, const Scenario &scenario, Rng &rng) {
  const auto logits = boltzmann_logits(state, goal, g, model, scenario);
  return action_directions()[sample_softmax(logits, rng)] * scenario.physics.v_max;
}

bool aligned(const SystemState &state, const Pose &object, const GraspType &g,
             const GraspPhaseConfig &cfg) {
  const Pose frame = grasp_frame_pose(state, g);
  return planar_distance(frame, object) <= cfg.align_xy && std::abs(frame.z - object.z) <= cfg.align_z;
}

OperatorInput boltzmann_operator(const SystemState &state, const Intent &target, double beta_agent,
                                 Rng &rng, const Scenario &scenario, const GraspPhaseConfig &cfg) {
  const Pose object = intent_object_pose(state, target.first);
  const GraspType &g = scenario.grasp_type(target.second);
  OperatorInput in;
  if (aligned(state, object, g, cfg)) {
    if (g.is_rigid())
      in.df = cfg.df_rate;
    else
      in.dP = -cfg.dP_rate;
    return in;
  }
  in.a_H = sample_boltzmann_action(state, object, g, {beta_agent, scenario.assist.length_scale},
                                   scenario, rng);
  return in;
}

// ---------------------------------------------------------------------------

ScriptOperator::ScriptOperator(std::vector<ScriptEntry> script, double dt) {
  if (!(dt > 0.0)) throw InputError("script dt must be > 0");
  double last = -std::numeric_limits<double>::infinity();
  for (const auto &e : script) {
    if (!std::isfinite(e.t) || e.t < 0.0) throw InputError("script timestamp must be finite and >= 0");
    if (e.t < last) throw InputError("script timestamps must be nondecreasing");
    if (!is_finite(e.input.a_H) || !std::isfinite(e.input.df) || !std::isfinite(e.input.dP))
      throw InputError("script input must be finite");
    last = e.t;
    const long tick = static_cast<long>(std::floor(e.t / dt + 1e-9));
    if (!by_tick_.empty() && by_tick_.back().first == tick)
      by_tick_.back().second = e.input;
    else
      by_tick_.emplace_back(tick, e.input);
  }
}

OperatorInput ScriptOperator::input_for_tick(long tick) const {
  auto it = std::lower_bound(by_tick_.begin(), by_tick_.end(), tick,
                             [](const auto &e, long t) { return e.first < t; });
  if (it != by_tick_.end() && it->first == tick) return it->second;
  return {};
}

OperatorInput ScriptOperator::act(const OperatorContext &ctx) { return input_for_tick(ctx.state.tick); }

long ScriptOperator::last_tick() const { return by_tick_.empty() ? -1 : by_tick_.back().first; }

// ---------------------------------------------------------------------------

ParticipantOperator::ParticipantOperator(ParticipantConfig cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(seed) {}

namespace {

const Body *held_body(const SystemState &s) {
  for (const auto &b : s.bodies)
    if (b.attached()) return &b;
  return nullptr;
}

bool contains(const std::vector<std::string> &v, const std::string &x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string default_grasp(const Scenario &scenario, const SceneObject &obj) {
  if (!obj.intended_grasp.empty()) return obj.intended_grasp;
  for (const auto &g : scenario.gripper.grasp_types)
    if (!g.is_rigid()) return g.tag;
  return kRigidTag;
}

}  // namespace

bool ParticipantOperator::choose_target(const OperatorContext &ctx) {
  const auto &sc = ctx.scenario;
  double best = std::numeric_limits<double>::infinity();
  target_.reset();
  for (const auto &obj : sc.objects) {
    if (contains(ctx.delivered, obj.id) || contains(abandoned_, obj.id)) continue;
    const Pose p = intent_object_pose(ctx.state, obj.id);
    if (sc.bin.contains_xy(p)) continue;
    const std::string tag = default_grasp(sc, obj);
    const double d = planar_distance(grasp_frame_pose(ctx.state, tag, sc), p);
    if (d < best) {
      best = d;
      target_ = Intent{obj.id, tag};
    }
  }
  attempts_ = 0;
  return target_.has_value();
}

void ParticipantOperator::abandon_target() {
  if (target_) abandoned_.push_back(target_->first);
  target_.reset();
}

Vec3 ParticipantOperator::drive(const OperatorContext &ctx, const Pose &goal,
                                const GraspType &frame_type, const Pose &frame_now) {
  const auto &sc = ctx.scenario;
  const double d = norm(goal - frame_now);
  const double closing = prev_distance_ ? (*prev_distance_ - d) / sc.physics.dt : 0.0;
  prev_distance_ = d;
  if (ctx.mode == Mode::shared) {
    if (resting_) {
      if (closing >= std::max(cfg_.min_closing_speed, d / cfg_.patience)) return {};
      resting_ = false;
      commit_ = cfg_.commit_ticks;
    } else if (commit_ <= 0) {
      resting_ = true;
      return {};
    }
  }
  --commit_;
  return sample_boltzmann_action(ctx.state, goal, frame_type,
                                 {cfg_.beta_agent, sc.assist.length_scale}, sc, rng_);
}

OperatorInput ParticipantOperator::act(const OperatorContext &ctx) {
  const auto &s = ctx.state;
  const auto &sc = ctx.scenario;
  const Body *held = held_body(s);
  OperatorInput in;

  auto enter = [&](Phase p) {
    phase_ = p;
    resting_ = false;
    commit_ = cfg_.commit_ticks;
    prev_distance_.reset();
    wait_ticks_ = 0;
  };

  // Bounded: every branch either returns or moves to a later phase.
  for (int guard = 0; guard < 8; ++guard) {
    switch (phase_) {
      case Phase::choose: {
        if (held) {
          enter(Phase::transport);
          continue;
        }
        if (!choose_target(ctx)) {
          done_ = true;
          return in;
        }
        enter(Phase::reach);
        continue;
      }
      case Phase::reach: {
        if (held) {
          enter(Phase::transport);
          continue;
        }
        if (!target_ || contains(ctx.delivered, target_->first)) {
          enter(Phase::choose);
          continue;
        }
        const Pose obj = intent_object_pose(s, target_->first);
        const GraspType &g = sc.grasp_type(target_->second);
        if (aligned(s, obj, g, cfg_.grasp)) {
          enter(Phase::grip);
          continue;
        }
        in.a_H = drive(ctx, obj, g, grasp_frame_pose(s, g));
        return in;
      }
      case Phase::grip: {
        if (held) {
          enter(Phase::transport);
          continue;
        }
        const Pose obj = intent_object_pose(s, target_->first);
        const GraspType &g = sc.grasp_type(target_->second);
        if (!aligned(s, obj, g, cfg_.grasp)) {
          enter(Phase::reach);
          continue;
        }
        bool saturated = false;
        if (g.is_rigid()) {
          if (s.f < cfg_.grasp.f_target) in.df = std::min(cfg_.grasp.df_rate, cfg_.grasp.f_target - s.f);
          else saturated = true;
        } else {
          if (s.P > sc.adhesion.P_min) in.dP = -cfg_.grasp.dP_rate;
          else saturated = true;
        }
        if (saturated && ++wait_ticks_ > switching_delay_ticks(sc) + cfg_.grip_grace_ticks) {
          if (++attempts_ >= cfg_.max_attempts) abandon_target();
          const int attempts = attempts_;
          enter(Phase::reset);
          attempts_ = attempts;
          continue;
        }
        if (rng_.uniform() < cfg_.drift_prob) {
          const auto &dirs = action_directions();
          const auto k = static_cast<std::size_t>(rng_.uniform() * 26.0);
          in.a_H = dirs[std::min<std::size_t>(k, 25)] * sc.physics.v_max;
        }
        return in;
      }
      case Phase::transport: {
        if (!held) {
          enter(target_ ? Phase::reset : Phase::choose);
          continue;
        }
        const SceneObject &obj = sc.object(held->object_id);
        const Vec3 half = (sc.bin.max - sc.bin.min) * 0.5;
        const Vec3 c = sc.bin.center();
        const double mx = half.x * (1.0 - cfg_.bin_margin);
        const double my = half.y * (1.0 - cfg_.bin_margin);
        const bool over_bin = std::abs(held->pose.x - c.x) <= mx && std::abs(held->pose.y - c.y) <= my &&
                              held->pose.z - obj.height >= sc.bin.max.z;
        if (over_bin) {
          enter(Phase::release);
          continue;
        }
        const GraspType &g = sc.grasp_type(*held->attached_to);
        const Pose goal = bin_drop_point(sc, obj) - held->attach_offset;
        in.a_H = drive(ctx, goal, g, grasp_frame_pose(s, g));
        return in;
      }
      case Phase::release: {
        if (!held) {
          enter(Phase::choose);
          continue;
        }
        for (const auto &b : s.bodies) {
          if (!b.attached()) continue;
          if (*b.attached_to == kRigidTag) in.df = -cfg_.grasp.df_rate;
          else in.dP = cfg_.grasp.dP_rate;
        }
        return in;
      }
      case Phase::reset: {
        if (held) {
          enter(Phase::transport);
          continue;
        }
        // Open the gripper and vent the pads, backing off upward meanwhile.
        if (s.f > 0.0) in.df = -cfg_.grasp.df_rate;
        if (s.P < 0.0) in.dP = cfg_.grasp.dP_rate;
        if (in.df == 0.0 && in.dP == 0.0 && wait_ticks_ >= 2) {
          const int attempts = attempts_;
          enter(target_ ? Phase::reach : Phase::choose);
          attempts_ = attempts;
          continue;
        }
        if (wait_ticks_++ < 2) in.a_H = Vec3{0.0, 0.0, sc.physics.v_max};
        return in;
      }
    }
  }
  return in;
}

// ---------------------------------------------------------------------------

PickPlaceRoutine::PickPlaceRoutine(std::string object_id, std::string grasp_tag, double hover)
    : object_id_(std::move(object_id)), grasp_tag_(std::move(grasp_tag)), hover_(hover) {}

namespace {

// Dead-beat approach: reach the goal this tick if the speed limit allows.
Vec3 approach(const Pose &goal, const Pose &now, const Scenario &sc) {
  return clamp_norm((goal - now) * (1.0 / sc.physics.dt), sc.physics.v_max);
}

constexpr double kArrived = 1e-9;

}  // namespace

OperatorInput PickPlaceRoutine::act(const OperatorContext &ctx) {
  const auto &s = ctx.state;
  const auto &sc = ctx.scenario;
  const GraspType &g = sc.grasp_type(grasp_tag_);
  const Pose frame = grasp_frame_pose(s, g);
  const Body *held = held_body(s);
  const long settle = switching_delay_ticks(sc) + 4;
  OperatorInput in;

  switch (stage_) {
    case Stage::hover: {
      const Pose goal = intent_object_pose(s, object_id_) + Vec3{0.0, 0.0, hover_};
      if (norm(goal - frame) > kArrived) {
        in.a_H = approach(goal, frame, sc);
        return in;
      }
      stage_ = Stage::descend;
      [[fallthrough]];
    }
    case Stage::descend: {
      const Pose goal = intent_object_pose(s, object_id_);
      if (norm(goal - frame) > kArrived) {
        in.a_H = approach(goal, frame, sc);
        return in;
      }
      stage_ = Stage::grip;
      [[fallthrough]];
    }
    case Stage::grip: {
      if (held) {
        picked_ = true;
        stage_ = Stage::carry;
      } else {
        if (g.is_rigid()) in.df = sc.gripper.f_max;
        else in.dP = sc.adhesion.P_min - sc.adhesion.P_max;
        if (++wait_ > settle) stage_ = Stage::finished;
        return in;
      }
      [[fallthrough]];
    }
    case Stage::carry: {
      if (!held) {
        stage_ = Stage::finished;
        return in;
      }
      const Pose goal = bin_drop_point(sc, sc.object(held->object_id)) - held->attach_offset;
      if (norm(goal - frame) > kArrived) {
        in.a_H = approach(goal, frame, sc);
        return in;
      }
      stage_ = Stage::release;
      wait_ = 0;
      [[fallthrough]];
    }
    case Stage::release: {
      if (!held) {
        stage_ = Stage::finished;
        return in;
      }
      if (g.is_rigid()) in.df = -sc.gripper.f_max;
      else in.dP = sc.adhesion.P_max - sc.adhesion.P_min;
      if (++wait_ > settle) stage_ = Stage::finished;
      return in;
    }
    case Stage::finished:
      return in;
  }
  return in;
}

}  // namespace riso
