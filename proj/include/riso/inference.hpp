#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "riso/world.hpp"

namespace riso {

/// Posterior collapsed to nothing (all candidates underflowed).
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (object id, grasp tag)
using Intent = std::pair<std::string, std::string>;

/// Normalized distribution over (object, grasp type) candidates, held as
/// log-probabilities.
class Belief {
 public:
  Belief() = default;

  /// Uniform over objects x grasp types.
  static Belief uniform(const std::vector<std::string> &objects, const std::vector<std::string> &grasps);

  /// From unnormalized non-negative weights; throws std::invalid_argument if
  /// the weights are not finite or sum to zero.
  static Belief from_weights(std::vector<Intent> support, const std::vector<double> &weights);

  /// From unnormalized log-weights (may contain -inf).
  static Belief from_log_weights(std::vector<Intent> support, std::vector<double> log_weights);

  /// Stores already-normalized log-probabilities verbatim, so a serialized
  /// belief round-trips bit for bit. Throws std::invalid_argument when they do
  /// not sum to 1 within 1e-9.
  static Belief restore(std::vector<Intent> support, std::vector<double> log_probs);

  /// The scenario prior restricted to `objects` (uniform when none is given).
  static Belief prior(const Scenario &scenario, const std::vector<std::string> &objects);

  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }
  const std::vector<Intent> &support() const { return support_; }
  const std::vector<double> &log_probs() const { return log_p_; }

  double prob(std::size_t i) const;
  double prob(const std::string &object, const std::string &grasp) const;
  std::vector<double> probs() const;

  /// "objectId/graspTag" -> probability.
  std::map<std::string, double> flat() const;

  friend bool operator==(const Belief &, const Belief &) = default;

 private:
  std::vector<Intent> support_;
  std::vector<double> log_p_;
};

/// Parameters of the noisily-optimal human model.
struct HumanModel {
  double beta = 5.0;
  double length_scale = 1.0;  // m
  /// Normalize each hypothesis' likelihood over the action lattice at the
  /// observed speed instead of treating the normalizer as shared.
  bool normalized = false;
};

/// The 26 lattice unit directions followed by the null direction.
const std::array<Vec3, 27> &action_directions();

/// beta * (|o - s_g|^2 - |o - s'_g|^2) with distances in units of
/// `length_scale`, where s'_g is the grasp frame after one tick of `a_H`.
double likelihood_logit(const SystemState &state, const Vec3 &a_H, const Pose &object,
                        const GraspType &g, const HumanModel &model, const Scenario &scenario);

/// Log-likelihood of `a_H` under (object, g) as used by `update`: the raw
/// logit, or with `model.normalized` the logit minus its log-sum-exp over the
/// lattice directions scaled to |a_H|. Zero for a_H = 0 either way.
double observation_logit(const SystemState &state, const Vec3 &a_H, const Pose &object,
                         const GraspType &g, const HumanModel &model, const Scenario &scenario);

/// One recursive Bayes step. Entries are floored at `epsilon` before the final
/// renormalization (0 disables the floor).
Belief update(const Belief &b, const SystemState &state, const Vec3 &a_H, const HumanModel &model,
              double epsilon, const Scenario &scenario);

/// Variant that adds caller-supplied logits; used for the shift-invariance
/// property and by `update` itself.
Belief apply_logits(const Belief &b, const std::vector<double> &logits, double epsilon);

/// Argmax; ties go to the lexicographically smallest (object, grasp).
Intent map_estimate(const Belief &b);

/// Where the operator would aim for `object_id`: the first free body of that
/// object, else any body of it. Throws ConfigError for unknown ids.
Pose intent_object_pose(const SystemState &state, const std::string &object_id);

}  // namespace riso
