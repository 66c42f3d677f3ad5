#include "riso/grasping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riso {

const char *to_string(GraspEventKind kind) {
  switch (kind) {
    case GraspEventKind::rigid_attach: return "rigid_attach";
    case GraspEventKind::rigid_detach: return "rigid_detach";
    case GraspEventKind::soft_attach: return "soft_attach";
    case GraspEventKind::soft_detach: return "soft_detach";
    case GraspEventKind::drop: return "drop";
  }
  return "drop";
}

GraspEventKind grasp_event_kind_from_string(const std::string &s) {
  for (auto k : {GraspEventKind::rigid_attach, GraspEventKind::rigid_detach,
                 GraspEventKind::soft_attach, GraspEventKind::soft_detach, GraspEventKind::drop})
    if (s == to_string(k)) return k;
  throw InputError("unknown grasp event kind '" + s + "'");
}

bool pinch_holds(double f, double mu, double mass, double g) { return 2.0 * mu * f >= mass * g; }

double soft_contact_radius(double R, double offset, double pad_radius) {
  return std::max(0.0, std::min(R, pad_radius - offset));
}

int items_under_pad(double R_item, double offset, double pad_radius) {
  const double span = pad_radius - offset;
  if (span <= 0.0) return 0;
  const double ratio = span / R_item;
  // Small slack so exact packings (e.g. ratio sqrt(6)) are not lost to rounding.
  return static_cast<int>(std::floor(ratio * ratio + 1e-9));
}

namespace {

bool holding_with(const SystemState &state, const std::string &tag) {
  return std::any_of(state.bodies.begin(), state.bodies.end(),
                     [&](const Body &b) { return b.attached_to == tag; });
}

bool graspable(const Body &b, const SystemState &state) {
  return !b.attached() && b.vz == 0.0 && !state.is_attached(b.object_id);
}

double pad_pressure(const SystemState &state, const Scenario &scenario) {
  return state.effective_pressure(switching_delay_ticks(scenario), scenario.gripper.initial_P);
}

}  // namespace

std::optional<GraspEvent> try_rigid_attach(SystemState &state, const Scenario &scenario) {
  if (state.f <= 0.0 || holding_with(state, kRigidTag)) return std::nullopt;
  const GraspType *rigid = nullptr;
  for (const auto &g : scenario.gripper.grasp_types)
    if (g.is_rigid()) rigid = &g;
  if (rigid == nullptr) return std::nullopt;
  const Pose frame = grasp_frame_pose(state, *rigid);

  std::size_t best = state.bodies.size();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.bodies.size(); ++i) {
    const Body &b = state.bodies[i];
    if (!graspable(b, state)) continue;
    const SceneObject &obj = scenario.object(b.object_id);
    const double d = planar_distance(frame, b.pose);
    if (d > scenario.gripper.capture_radius) continue;
    if (std::abs(frame.z - b.pose.z) > scenario.gripper.rigid_z_tolerance) continue;
    if (obj.width > scenario.gripper.stroke) continue;
    if (!pinch_holds(state.f, obj.friction_mu, obj.item_mass() * b.count, scenario.physics.g)) continue;
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best == state.bodies.size()) return std::nullopt;

  Body &b = state.bodies[best];
  b.attached_to = rigid->tag;
  b.attach_offset = b.pose - frame;
  b.vz = 0.0;
  return GraspEvent{GraspEventKind::rigid_attach, b.object_id, rigid->tag, b.count, state.time};
}

std::optional<GraspEvent> try_soft_attach(SystemState &state, const GraspType &pad,
                                          const Scenario &scenario) {
  if (pad.is_rigid() || !(state.P < 0.0) || holding_with(state, pad.tag)) return std::nullopt;
  const Pose frame = grasp_frame_pose(state, pad);
  const AdhesionParams &adh = scenario.adhesion;
  const double P_eff = pad_pressure(state, scenario);

  struct Candidate {
    std::size_t index;
    double offset;
    int items;
    double radius;
  };
  std::optional<Candidate> best;
  for (std::size_t i = 0; i < state.bodies.size(); ++i) {
    const Body &b = state.bodies[i];
    if (!graspable(b, state)) continue;
    if (std::abs(frame.z - b.pose.z) > scenario.gripper.contact_tolerance) continue;
    const double e = planar_distance(frame, b.pose);
    if (e >= adh.pad_radius) continue;
    const SceneObject &obj = scenario.object(b.object_id);
    const double item_weight = obj.item_mass() * scenario.physics.g;

    int items = 0;
    double radius = 0.0;
    if (obj.count == 1) {
      radius = soft_contact_radius(obj.contact_radius, e, adh.pad_radius);
      items = 1;
    } else {
      radius = std::min(obj.contact_radius, adh.pad_radius);
      items = std::min(b.count, items_under_pad(obj.contact_radius, e, adh.pad_radius));
    }
    if (items < 1 || radius <= 0.0) continue;
    if (force_capacity(P_eff, radius, obj.adhesion_energy, adh) < item_weight) continue;
    if (!best || e < best->offset) best = Candidate{i, e, items, radius};
  }
  if (!best) return std::nullopt;

  Body *held = &state.bodies[best->index];
  if (best->items < held->count) {
    Body part = *held;
    held->count -= best->items;
    part.count = best->items;
    state.bodies.push_back(std::move(part));
    held = &state.bodies.back();
  }
  held->attached_to = pad.tag;
  held->attach_offset = held->pose - frame;
  held->contact_radius = best->radius;
  held->vz = 0.0;
  return GraspEvent{GraspEventKind::soft_attach, held->object_id, pad.tag, held->count, state.time};
}

std::vector<GraspEvent> check_detach(SystemState &state, const Scenario &scenario) {
  std::vector<GraspEvent> events;
  const double P_eff = pad_pressure(state, scenario);
  for (auto &b : state.bodies) {
    if (!b.attached()) continue;
    const SceneObject &obj = scenario.object(b.object_id);
    const std::string tag = *b.attached_to;
    bool release = false;
    GraspEventKind kind;
    if (tag == kRigidTag) {
      release = !pinch_holds(state.f, obj.friction_mu, obj.item_mass() * b.count, scenario.physics.g);
      kind = GraspEventKind::rigid_detach;
    } else {
      const double cap = force_capacity(P_eff, b.contact_radius, obj.adhesion_energy, scenario.adhesion);
      release = cap < obj.item_mass() * scenario.physics.g;
      kind = GraspEventKind::soft_detach;
    }
    if (!release) continue;
    b.attached_to.reset();
    b.attach_offset = {};
    b.contact_radius = 0.0;
    b.vz = 0.0;
    events.push_back({kind, b.object_id, tag, b.count, state.time});
  }
  return events;
}

std::vector<GraspEvent> resolve_grasps(const SystemState &prev, SystemState &state,
                                       const Scenario &scenario) {
  std::vector<GraspEvent> events;
  for (std::size_t i = 0; i < prev.bodies.size() && i < state.bodies.size(); ++i) {
    const Body &before = prev.bodies[i];
    const Body &after = state.bodies[i];
    if (!before.attached() && before.vz != 0.0 && !after.attached() && after.vz == 0.0)
      events.push_back({GraspEventKind::drop, after.object_id, "", after.count, state.time});
  }
  auto detached = check_detach(state, scenario);
  events.insert(events.end(), detached.begin(), detached.end());
  if (auto e = try_rigid_attach(state, scenario)) events.push_back(*e);
  for (const auto &g : scenario.gripper.grasp_types) {
    if (g.is_rigid()) continue;
    if (auto e = try_soft_attach(state, g, scenario)) events.push_back(*e);
  }
  return events;
}

}  // namespace riso
