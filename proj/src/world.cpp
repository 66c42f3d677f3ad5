#include "riso/world.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace riso {

const SceneObject &Scenario::object(const std::string &id) const {
  for (const auto &o : objects)
    if (o.id == id) return o;
  throw ConfigError("unknown object id '" + id + "'");
}

const GraspType &Scenario::grasp_type(const std::string &tag) const {
  for (const auto &g : gripper.grasp_types)
    if (g.tag == tag) return g;
  throw ConfigError("unknown grasp type '" + tag + "'");
}

void Scenario::validate() const {
  auto fail = [](const std::string &msg) { throw ConfigError(msg); };
  if (!(physics.dt > 0.0)) fail("physics.dt must be > 0");
  if (!(physics.v_max > 0.0)) fail("physics.v_max must be > 0");
  if (!(physics.g > 0.0)) fail("physics.g must be > 0");
  if (!(assist.alpha >= 0.0 && assist.alpha <= 1.0)) fail("assistance.alpha must be in [0, 1]");
  if (!(assist.beta >= 0.0)) fail("assistance.beta must be >= 0");
  if (!(assist.k_R >= 0.0)) fail("assistance.k_R must be >= 0");
  if (!(assist.epsilon >= 0.0 && assist.epsilon < 1.0)) fail("assistance.epsilon must be in [0, 1)");
  if (!(assist.length_scale > 0.0)) fail("assistance.length_scale must be > 0");
  if (!(gripper.f_max > 0.0)) fail("gripper.f_max must be > 0");
  if (!(gripper.stroke > 0.0)) fail("gripper.stroke must be > 0");
  try {
    adhesion.validate();
  } catch (const std::invalid_argument &e) {
    fail(e.what());
  }
  if (gripper.initial_f < 0.0 || gripper.initial_f > gripper.f_max) fail("gripper.initial_f out of range");
  if (gripper.initial_P < adhesion.P_min || gripper.initial_P > adhesion.P_max)
    fail("gripper.initial_P out of range");

  std::set<std::string> tags;
  int soft = 0;
  bool rigid = false;
  for (const auto &g : gripper.grasp_types) {
    if (g.tag.empty() || g.tag.find('/') != std::string::npos) fail("invalid grasp tag '" + g.tag + "'");
    if (!tags.insert(g.tag).second) fail("duplicate grasp tag '" + g.tag + "'");
    if (!is_finite(g.offset)) fail("non-finite offset for grasp '" + g.tag + "'");
    if (g.is_rigid()) rigid = true; else ++soft;
  }
  if (!rigid || soft < 1) fail("gripper needs a 'rigid' grasp type and at least one soft pad");

  if (!workspace.contains(gripper.initial_ee)) fail("initial end-effector outside workspace");
  if (objects.empty()) fail("scenario has no objects");
  std::set<std::string> ids;
  for (const auto &o : objects) {
    if (o.id.empty() || o.id.find('/') != std::string::npos) fail("invalid object id '" + o.id + "'");
    if (!ids.insert(o.id).second) fail("duplicate object id '" + o.id + "'");
    if (!is_finite(o.pose) || o.pose.z < 0.0) fail("object '" + o.id + "' has an invalid pose");
    if (!(o.mass > 0.0)) fail("object '" + o.id + "': mass must be > 0");
    if (!(o.contact_radius > 0.0)) fail("object '" + o.id + "': contact_radius must be > 0");
    if (!(o.adhesion_energy > 0.0)) fail("object '" + o.id + "': adhesion_energy must be > 0");
    if (!(o.friction_mu > 0.0)) fail("object '" + o.id + "': friction_mu must be > 0");
    if (!(o.width > 0.0) || !(o.height >= 0.0)) fail("object '" + o.id + "': bad dimensions");
    if (o.count < 1) fail("object '" + o.id + "': count must be >= 1");
    if (!workspace.contains_xy(o.pose)) fail("object '" + o.id + "' outside workspace");
    if (bin.contains_xy(o.pose)) fail("object '" + o.id + "' starts inside the bin");
    if (!o.intended_grasp.empty() && !tags.count(o.intended_grasp))
      fail("object '" + o.id + "': unknown intended grasp '" + o.intended_grasp + "'");
  }

  if (!prior.empty()) {
    double total = 0.0;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &e : prior) {
      if (!ids.count(e.object) || !tags.count(e.grasp)) fail("prior entry references unknown pair");
      if (!seen.insert({e.object, e.grasp}).second) fail("duplicate prior entry");
      if (!(e.p >= 0.0)) fail("prior probabilities must be >= 0");
      total += e.p;
    }
    if (!(total > 0.0)) fail("prior has no mass");
  }
}

std::vector<Attachment> SystemState::attachments() const {
  std::vector<Attachment> out;
  for (const auto &b : bodies)
    if (b.attached()) out.push_back({b.object_id, *b.attached_to});
  return out;
}

bool SystemState::is_attached(const std::string &object_id) const {
  return std::any_of(bodies.begin(), bodies.end(),
                     [&](const Body &b) { return b.object_id == object_id && b.attached(); });
}

double SystemState::effective_pressure(int delay_ticks, double initial_P) const {
  const long cutoff = tick - delay_ticks;
  double p = initial_P;
  for (const auto &[t, cmd] : pressure_log) {
    if (t > cutoff) break;
    p = cmd;
  }
  return p;
}

bool operator==(const Body &a, const Body &b) {
  return a.object_id == b.object_id && a.pose == b.pose && a.count == b.count && a.vz == b.vz &&
         a.attached_to == b.attached_to && a.attach_offset == b.attach_offset &&
         a.contact_radius == b.contact_radius;
}

bool operator==(const SystemState &a, const SystemState &b) {
  return a.ee == b.ee && a.f == b.f && a.P == b.P && a.bodies == b.bodies && a.tick == b.tick &&
         a.time == b.time && a.pressure_log == b.pressure_log;
}

SystemState initial_state(const Scenario &scenario) {
  SystemState s;
  s.ee = scenario.gripper.initial_ee;
  s.f = scenario.gripper.initial_f;
  s.P = scenario.gripper.initial_P;
  for (const auto &o : scenario.objects) {
    Body b;
    b.object_id = o.id;
    b.pose = o.pose;
    b.count = o.count;
    s.bodies.push_back(std::move(b));
  }
  s.pressure_log.emplace_back(0, s.P);
  return s;
}

int switching_delay_ticks(const Scenario &scenario) {
  // Relative guard keeps e.g. 0.1 / 0.05 from rounding up to 3.
  const double ratio = scenario.adhesion.tau_sw / scenario.physics.dt;
  return static_cast<int>(std::ceil(ratio - 1e-9));
}

SystemState integrate_gripper_channels(SystemState state, double df, double dP,
                                       const Scenario &scenario) {
  state.f = std::clamp(state.f + df, 0.0, scenario.gripper.f_max);
  state.P = std::clamp(state.P + dP, scenario.adhesion.P_min, scenario.adhesion.P_max);
  return state;
}

Pose grasp_frame_pose(const Pose &ee, const GraspType &g) { return ee + g.offset; }

Pose grasp_frame_pose(const SystemState &state, const GraspType &g) {
  return grasp_frame_pose(state.ee, g);
}

Pose grasp_frame_pose(const SystemState &state, const std::string &tag, const Scenario &scenario) {
  return grasp_frame_pose(state.ee, scenario.grasp_type(tag));
}

Pose next_ee(const Pose &ee, const Vec3 &a, const Scenario &scenario) {
  return scenario.workspace.clamp(ee + a * scenario.physics.dt);
}

double support_height(const Pose &p, const Scenario &scenario) {
  return scenario.bin.contains_xy(p) ? scenario.bin.min.z : 0.0;
}

bool at_rest(const Body &body, const Scenario &scenario) {
  if (body.attached()) return true;
  const double floor = support_height(body.pose, scenario) + scenario.object(body.object_id).height;
  return body.vz == 0.0 && body.pose.z <= floor;
}

bool in_bin(const Body &body, const SceneObject &obj, const Scenario &scenario) {
  if (body.attached() || body.vz != 0.0) return false;
  if (!scenario.bin.contains_xy(body.pose)) return false;
  return body.pose.z - obj.height <= scenario.bin.max.z;
}

SystemState step(const SystemState &state, const Vec3 &a, double df, double dP,
                 const Scenario &scenario) {
  if (!is_finite(a) || !std::isfinite(df) || !std::isfinite(dP))
    throw InputError("non-finite command");

  SystemState next = integrate_gripper_channels(state, df, dP, scenario);
  next.ee = next_ee(state.ee, a, scenario);
  next.tick = state.tick + 1;
  next.time = static_cast<double>(next.tick) * scenario.physics.dt;

  if (next.P != state.P) {
    next.pressure_log.emplace_back(next.tick, next.P);
    // Keep the newest entry that is already in effect plus everything pending.
    const long cutoff = next.tick - switching_delay_ticks(scenario);
    auto first_pending = std::find_if(next.pressure_log.begin(), next.pressure_log.end(),
                                      [&](const auto &e) { return e.first > cutoff; });
    if (first_pending - next.pressure_log.begin() > 1)
      next.pressure_log.erase(next.pressure_log.begin(), first_pending - 1);
  }

  const double dt = scenario.physics.dt;
  for (auto &b : next.bodies) {
    const SceneObject &obj = scenario.object(b.object_id);
    if (b.attached()) {
      b.pose = grasp_frame_pose(next.ee, scenario.grasp_type(*b.attached_to)) + b.attach_offset;
      b.vz = 0.0;
      continue;
    }
    const double floor = support_height(b.pose, scenario) + obj.height;
    if (b.pose.z > floor || b.vz != 0.0) {
      // Semi-implicit Euler.
      b.vz -= scenario.physics.g * dt;
      b.pose.z += b.vz * dt;
      if (b.pose.z <= floor) {
        b.pose.z = floor;
        b.vz = 0.0;
      }
    } else if (b.pose.z < floor) {
      b.pose.z = floor;
    }
  }
  return next;
}

}  // namespace riso
