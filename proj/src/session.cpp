#include "riso/session.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riso/assist.hpp"
#include "riso/io.hpp"

namespace riso {

const char *to_string(EpisodeStatus status) {
  switch (status) {
    case EpisodeStatus::running: return "running";
    case EpisodeStatus::complete: return "complete";
    case EpisodeStatus::operator_done: return "operator_done";
    case EpisodeStatus::budget_exhausted: return "budget_exhausted";
  }
  return "running";
}

EpisodeStatus episode_status_from_string(const std::string &s) {
  for (auto st : {EpisodeStatus::running, EpisodeStatus::complete, EpisodeStatus::operator_done,
                  EpisodeStatus::budget_exhausted})
    if (s == to_string(st)) return st;
  throw InputError("unknown episode status '" + s + "'");
}

SessionConfig config_from_scenario(const Scenario &scenario, Mode mode) {
  SessionConfig c;
  c.mode = mode;
  c.alpha = scenario.assist.alpha;
  c.beta = scenario.assist.beta;
  c.seed = scenario.seed;
  return c;
}

Session::Session(Scenario scenario, SessionConfig config)
    : scenario_(std::move(scenario)), config_(config) {
  scenario_.validate();
  if (!(config_.alpha >= 0.0 && config_.alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(config_.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  reset();
}

void Session::reset() {
  state_ = initial_state(scenario_);
  delivered_.clear();
  belief_ = Belief::prior(scenario_, active_objects());
}

void Session::set_mode(Mode mode) { config_.mode = mode; }

double Session::effective_alpha() const { return config_.mode == Mode::human ? 1.0 : config_.alpha; }

EpisodeHeader Session::header() const {
  EpisodeHeader h;
  h.scenario_hash = scenario_hash(scenario_);
  h.seed = config_.seed;
  h.alpha = effective_alpha();
  h.beta = config_.beta;
  h.mode = config_.mode;
  h.dt = scenario_.physics.dt;
  return h;
}

long Session::max_ticks() const {
  if (config_.max_ticks > 0) return config_.max_ticks;
  const double seconds = scenario_.physics.budget_per_object * double(scenario_.objects.size());
  return static_cast<long>(std::ceil(seconds / scenario_.physics.dt - 1e-9));
}

bool Session::all_delivered() const { return delivered_.size() == scenario_.objects.size(); }

std::vector<std::string> Session::active_objects() const {
  std::vector<std::string> out;
  for (const auto &o : scenario_.objects)
    if (std::find(delivered_.begin(), delivered_.end(), o.id) == delivered_.end()) out.push_back(o.id);
  return out;
}

TickRecord Session::tick(const OperatorInput &raw_input) {
  if (!is_finite(raw_input.a_H) || !std::isfinite(raw_input.df) || !std::isfinite(raw_input.dP))
    throw InputError("non-finite operator input");
  OperatorInput input = raw_input;
  input.a_H = clamp_norm(input.a_H, scenario_.physics.v_max);

  const bool shared = config_.mode == Mode::shared;
  const bool holding = !state_.attachments().empty();
  const HumanModel model{config_.beta, scenario_.assist.length_scale, scenario_.assist.normalize_likelihood};

  if (shared && !holding && !belief_.empty())
    belief_ = update(belief_, state_, input.a_H, model, scenario_.assist.epsilon, scenario_);

  Vec3 a_R;
  if (shared && !config_.zero_assist)
    a_R = holding ? transport_action(state_, scenario_) : assistance_action(belief_, state_, scenario_);

  const Vec3 a = blend(input.a_H, a_R, effective_alpha(), scenario_.physics.v_max);

  const SystemState prev = state_;
  state_ = step(prev, a, input.df, input.dP, scenario_);
  auto events = resolve_grasps(prev, state_, scenario_);

  bool released_into_bin = false;
  for (const auto &e : events) {
    if (e.kind != GraspEventKind::rigid_detach && e.kind != GraspEventKind::soft_detach) continue;
    if (std::find(delivered_.begin(), delivered_.end(), e.object_id) != delivered_.end()) continue;
    const auto body = std::find_if(state_.bodies.begin(), state_.bodies.end(), [&](const Body &b) {
      return b.object_id == e.object_id && !b.attached() && scenario_.bin.contains_xy(b.pose);
    });
    if (body == state_.bodies.end()) continue;
    delivered_.push_back(e.object_id);
    released_into_bin = true;
  }
  if (released_into_bin) belief_ = Belief::prior(scenario_, active_objects());

  TickRecord rec;
  rec.tick = state_.tick;
  rec.time = state_.time;
  rec.state = state_;
  rec.input = raw_input;
  rec.a_R = a_R;
  rec.a = a;
  rec.belief = belief_;
  rec.active = input.active();
  rec.events = std::move(events);
  return rec;
}

void settle(Session &session, EpisodeLog &log) {
  if (log.status == EpisodeStatus::budget_exhausted) return;
  auto falling = [&] {
    return std::any_of(session.state().bodies.begin(), session.state().bodies.end(),
                       [&](const Body &b) { return !at_rest(b, session.scenario()); });
  };
  while (falling() && !session.budget_exhausted()) log.ticks.push_back(session.tick({}));
}

EpisodeLog run_episode(const Scenario &scenario, Operator &op, const SessionConfig &config) {
  Session session(scenario, config);
  EpisodeLog log;
  log.header = session.header();
  log.scenario = session.scenario();
  while (true) {
    if (session.all_delivered()) {
      log.status = EpisodeStatus::complete;
      break;
    }
    if (session.budget_exhausted()) {
      log.status = EpisodeStatus::budget_exhausted;
      break;
    }
    const OperatorContext ctx{session.scenario(), session.state(), session.config().mode,
                              session.delivered()};
    const OperatorInput in = op.act(ctx);
    if (op.done()) {
      log.status = EpisodeStatus::operator_done;
      break;
    }
    log.ticks.push_back(session.tick(in));
  }
  settle(session, log);
  return log;
}

EpisodeLog replay(const EpisodeLog &log) {
  SessionConfig cfg;
  cfg.mode = log.header.mode;
  cfg.alpha = log.header.alpha;
  cfg.beta = log.header.beta;
  cfg.seed = log.header.seed;
  Session session(log.scenario, cfg);
  EpisodeLog out;
  out.header = session.header();
  out.scenario = session.scenario();
  for (const auto &rec : log.ticks) out.ticks.push_back(session.tick(rec.input));
  out.status = log.status;
  return out;
}

namespace {

bool same_tick(const TickRecord &a, const TickRecord &b) {
  return a.tick == b.tick && a.time == b.time && a.state == b.state && a.input == b.input &&
         a.a_R == b.a_R && a.a == b.a && a.belief == b.belief && a.active == b.active &&
         a.events == b.events;
}

}  // namespace

bool identical(const EpisodeLog &a, const EpisodeLog &b) {
  if (a.ticks.size() != b.ticks.size() || a.status != b.status) return false;
  for (std::size_t i = 0; i < a.ticks.size(); ++i)
    if (!same_tick(a.ticks[i], b.ticks[i])) return false;
  return true;
}

MetricsReport compute_metrics(const EpisodeLog &log, const Scenario &scenario) {
  if (log.ticks.empty()) throw std::invalid_argument("cannot compute metrics of an empty log");
  const double n = static_cast<double>(scenario.objects.size());
  const double dt = scenario.physics.dt;
  MetricsReport r;
  r.status = to_string(log.status);

  long over = 0;
  long active = 0;
  double path = 0.0;
  Pose prev = scenario.gripper.initial_ee;
  for (const auto &t : log.ticks) {
    const Pose ee = t.state.ee;
    if (scenario.table_region.contains_xy(ee)) {
      ++over;
      path += norm(ee - prev);
      if (t.active) ++active;
    }
    prev = ee;
  }

  const SystemState &final_state = log.ticks.back().state;
  int successes = 0;
  for (const auto &obj : scenario.objects) {
    ObjectOutcome out;
    for (const auto &b : final_state.bodies)
      if (b.object_id == obj.id && in_bin(b, obj, scenario)) out.items_in_bin += b.count;
    out.success = out.items_in_bin > 0;
    if (out.success) ++successes;
    r.per_object[obj.id] = out;
  }
  r.success_rate = 100.0 * successes / n;
  r.grasp_time = dt * static_cast<double>(over) / n;
  r.grasp_distance = path / n;
  r.input_time = dt * static_cast<double>(active) / n;
  return r;
}

}  // namespace riso
