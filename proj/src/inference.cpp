#include "riso/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riso {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Shifts log-weights so the maximum is 0, then normalizes.
void normalize_log(std::vector<double> &lw) {
  double mx = kNegInf;
  for (double v : lw) mx = std::max(mx, v);
  if (!std::isfinite(mx)) throw NumericalFault("belief has no finite mass");
  double sum = 0.0;
  for (double v : lw) sum += std::exp(v - mx);
  const double log_z = mx + std::log(sum);
  for (double &v : lw) v -= log_z;
}

}  // namespace

Belief Belief::uniform(const std::vector<std::string> &objects, const std::vector<std::string> &grasps) {
  std::vector<Intent> support;
  for (const auto &o : objects)
    for (const auto &g : grasps) support.emplace_back(o, g);
  return from_weights(std::move(support), std::vector<double>(objects.size() * grasps.size(), 1.0));
}

Belief Belief::from_weights(std::vector<Intent> support, const std::vector<double> &weights) {
  if (support.size() != weights.size()) throw std::invalid_argument("belief support/weight size mismatch");
  std::vector<double> lw;
  lw.reserve(weights.size());
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("belief weights must be finite and >= 0");
    lw.push_back(w > 0.0 ? std::log(w) : kNegInf);
  }
  try {
    return from_log_weights(std::move(support), std::move(lw));
  } catch (const NumericalFault &) {
    throw std::invalid_argument("belief weights sum to zero");
  }
}

Belief Belief::from_log_weights(std::vector<Intent> support, std::vector<double> log_weights) {
  if (support.size() != log_weights.size()) throw std::invalid_argument("belief support/weight size mismatch");
  Belief b;
  b.support_ = std::move(support);
  b.log_p_ = std::move(log_weights);
  if (!b.support_.empty()) normalize_log(b.log_p_);
  return b;
}

Belief Belief::restore(std::vector<Intent> support, std::vector<double> log_probs) {
  if (support.size() != log_probs.size()) throw std::invalid_argument("belief support/weight size mismatch");
  double total = 0.0;
  for (double v : log_probs) {
    if (std::isnan(v) || v > 0.0) throw std::invalid_argument("invalid log-probability");
    total += std::exp(v);
  }
  if (!support.empty() && std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("belief is not normalized");
  Belief b;
  b.support_ = std::move(support);
  b.log_p_ = std::move(log_probs);
  return b;
}

Belief Belief::prior(const Scenario &scenario, const std::vector<std::string> &objects) {
  std::vector<Intent> support;
  std::vector<double> w;
  for (const auto &o : objects) {
    for (const auto &g : scenario.gripper.grasp_types) {
      support.emplace_back(o, g.tag);
      if (scenario.prior.empty()) {
        w.push_back(1.0);
        continue;
      }
      double p = 0.0;
      for (const auto &e : scenario.prior)
        if (e.object == o && e.grasp == g.tag) p = e.p;
      w.push_back(p);
    }
  }
  if (support.empty()) return Belief{};
  double total = 0.0;
  for (double v : w) total += v;
  // A prior with no mass left on the remaining objects falls back to uniform.
  if (!(total > 0.0)) std::fill(w.begin(), w.end(), 1.0);
  return from_weights(std::move(support), w);
}

double Belief::prob(std::size_t i) const { return std::exp(log_p_.at(i)); }

double Belief::prob(const std::string &object, const std::string &grasp) const {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i].first == object && support_[i].second == grasp) return prob(i);
  return 0.0;
}

std::vector<double> Belief::probs() const {
  std::vector<double> p;
  p.reserve(log_p_.size());
  for (double v : log_p_) p.push_back(std::exp(v));
  return p;
}

std::map<std::string, double> Belief::flat() const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < support_.size(); ++i)
    out[support_[i].first + "/" + support_[i].second] = prob(i);
  return out;
}

double likelihood_logit(const SystemState &state, const Vec3 &a_H, const Pose &object,
                        const GraspType &g, const HumanModel &model, const Scenario &scenario) {
  const Pose now = grasp_frame_pose(state.ee, g);
  const Pose next = grasp_frame_pose(next_ee(state.ee, a_H, scenario), g);
  const double inv_l2 = 1.0 / (model.length_scale * model.length_scale);
  return model.beta * (squared_norm(object - now) - squared_norm(object - next)) * inv_l2;
}

const std::array<Vec3, 27> &action_directions() {
  static const std::array<Vec3, 27> dirs = [] {
    std::array<Vec3, 27> out{};
    std::size_t k = 0;
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        for (int l = -1; l <= 1; ++l) {
          if (i == 0 && j == 0 && l == 0) continue;
          const Vec3 v{double(i), double(j), double(l)};
          out[k++] = v * (1.0 / norm(v));
        }
    out[26] = Vec3{};
    return out;
  }();
  return dirs;
}

double observation_logit(const SystemState &state, const Vec3 &a_H, const Pose &object,
                         const GraspType &g, const HumanModel &model, const Scenario &scenario) {
  const double raw = likelihood_logit(state, a_H, object, g, model, scenario);
  const double speed = norm(a_H);
  if (!model.normalized || speed == 0.0) return raw;
  std::array<double, 27> alt{};
  const auto &dirs = action_directions();
  for (std::size_t i = 0; i < dirs.size(); ++i)
    alt[i] = likelihood_logit(state, dirs[i] * speed, object, g, model, scenario);
  const double mx = *std::max_element(alt.begin(), alt.end());
  double sum = 0.0;
  for (double v : alt) sum += std::exp(v - mx);
  return raw - (mx + std::log(sum));
}

Belief apply_logits(const Belief &b, const std::vector<double> &logits, double epsilon) {
  if (logits.size() != b.size()) throw std::invalid_argument("logit count does not match belief");
  std::vector<double> lw(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) lw[i] = b.log_probs()[i] + logits[i];
  normalize_log(lw);
  if (epsilon > 0.0) {
    const double log_eps = std::log(epsilon);
    for (double &v : lw) v = std::max(v, log_eps);
    normalize_log(lw);
  }
  return Belief::from_log_weights(b.support(), std::move(lw));
}

Pose intent_object_pose(const SystemState &state, const std::string &object_id) {
  const Body *fallback = nullptr;
  for (const auto &body : state.bodies) {
    if (body.object_id != object_id) continue;
    if (!body.attached()) return body.pose;
    if (fallback == nullptr) fallback = &body;
  }
  if (fallback == nullptr) throw ConfigError("no body for object '" + object_id + "'");
  return fallback->pose;
}

Belief update(const Belief &b, const SystemState &state, const Vec3 &a_H, const HumanModel &model,
              double epsilon, const Scenario &scenario) {
  std::vector<double> logits(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto &[obj, tag] = b.support()[i];
    logits[i] = observation_logit(state, a_H, intent_object_pose(state, obj), scenario.grasp_type(tag),
                                  model, scenario);
  }
  return apply_logits(b, logits, epsilon);
}

Intent map_estimate(const Belief &b) {
  if (b.empty()) throw std::invalid_argument("map_estimate of an empty belief");
  std::size_t best = 0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    const double lp = b.log_probs()[i];
    const double lb = b.log_probs()[best];
    if (lp > lb || (lp == lb && b.support()[i] < b.support()[best])) best = i;
  }
  return b.support()[best];
}

}  // namespace riso
