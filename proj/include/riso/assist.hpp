#pragma once

#include "riso/inference.hpp"
#include "riso/world.hpp"

namespace riso {

/// Belief-weighted displacement sum_{o,g} (o - s_g) * b(o, g), in meters.
Vec3 expected_displacement(const Belief &b, const SystemState &state, const Scenario &scenario);

/// Autonomous arm velocity. k_R times the expected displacement, clamped to
/// v_max. When `alignment_hold` is on and the MAP pair carries more than
/// `hold_threshold` of the mass, servos on that pair alone so the chosen grasp
/// frame stays locked over its object (including height) while the operator
/// works the gripper channels.
Vec3 assistance_action(const Belief &b, const SystemState &state, const Scenario &scenario);

/// Autonomous velocity while something is held: carries the first held body
/// to the drop point above the bin. Zero when nothing is held or transport
/// assistance is disabled.
Vec3 transport_action(const SystemState &state, const Scenario &scenario);

/// Point above the bin at which a held body should be released.
Pose bin_drop_point(const Scenario &scenario, const SceneObject &obj);

/// alpha * a_H + (1 - alpha) * a_R, clamped to v_max. Throws ConfigError for
/// alpha outside [0, 1]. alpha = 1 and alpha = 0 return the respective input
/// unchanged (before clamping).
Vec3 blend(const Vec3 &a_H, const Vec3 &a_R, double alpha, double v_max);

}  // namespace riso
