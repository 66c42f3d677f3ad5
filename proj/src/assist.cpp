#include "riso/assist.hpp"

namespace riso {

Vec3 expected_displacement(const Belief &b, const SystemState &state, const Scenario &scenario) {
  Vec3 sum;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto &[obj, tag] = b.support()[i];
    const Vec3 d = intent_object_pose(state, obj) - grasp_frame_pose(state, tag, scenario);
    sum += d * b.prob(i);
  }
  return sum;
}

Vec3 assistance_action(const Belief &b, const SystemState &state, const Scenario &scenario) {
  if (b.empty()) return {};
  const AssistParams &p = scenario.assist;
  Vec3 raw;
  const Intent best = map_estimate(b);
  if (p.alignment_hold && b.prob(best.first, best.second) > p.hold_threshold) {
    raw = intent_object_pose(state, best.first) - grasp_frame_pose(state, best.second, scenario);
  } else {
    raw = expected_displacement(b, state, scenario);
  }
  return clamp_norm(raw * p.k_R, scenario.physics.v_max);
}

Pose bin_drop_point(const Scenario &scenario, const SceneObject &obj) {
  Pose c = scenario.bin.center();
  c.z = scenario.bin.max.z + scenario.assist.carry_clearance + obj.height;
  return c;
}

Vec3 transport_action(const SystemState &state, const Scenario &scenario) {
  if (!scenario.assist.transport_assist) return {};
  for (const auto &body : state.bodies) {
    if (!body.attached()) continue;
    const Pose target = bin_drop_point(scenario, scenario.object(body.object_id));
    const Vec3 raw = target - body.pose;
    return clamp_norm(raw * scenario.assist.k_R, scenario.physics.v_max);
  }
  return {};
}

Vec3 blend(const Vec3 &a_H, const Vec3 &a_R, double alpha, double v_max) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  Vec3 a;
  if (alpha == 1.0) {
    a = a_H;
  } else if (alpha == 0.0) {
    a = a_R;
  } else {
    a = a_H * alpha + a_R * (1.0 - alpha);
  }
  return clamp_norm(a, v_max);
}

}  // namespace riso
