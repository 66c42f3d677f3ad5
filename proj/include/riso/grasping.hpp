#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riso/world.hpp"

namespace riso {

enum class GraspEventKind { rigid_attach, rigid_detach, soft_attach, soft_detach, drop };

const char *to_string(GraspEventKind kind);
GraspEventKind grasp_event_kind_from_string(const std::string &s);

/// Logged grasp transition. `drop` marks a released body coming to rest.
struct GraspEvent {
  GraspEventKind kind = GraspEventKind::drop;
  std::string object_id;
  std::string grasp;
  int items = 0;
  double time = 0.0;

  friend bool operator==(const GraspEvent &, const GraspEvent &) = default;
};

/// Hold rule for the rigid pinch: two Coulomb contacts, ties hold.
bool pinch_holds(double f, double mu, double mass, double g);

/// Effective soft-contact radius for a pad misaligned by `offset` (xy).
/// Equals min(R, pad_radius) when aligned; shrinks as the pad slides off.
double soft_contact_radius(double R, double offset, double pad_radius);

/// Items of radius `R_item` fitting under the pad: floor(((pad_radius - offset)/R_item)^2).
int items_under_pad(double R_item, double offset, double pad_radius);

/// Attempts a rigid pinch on the closest graspable body. Returns the event and
/// applies it to `state`, or returns nothing and leaves `state` untouched.
std::optional<GraspEvent> try_rigid_attach(SystemState &state, const Scenario &scenario);

/// Attempts a soft grasp with pad `pad`; splits piles when only part fits.
std::optional<GraspEvent> try_soft_attach(SystemState &state, const GraspType &pad,
                                          const Scenario &scenario);

/// Releases every held body whose hold condition fails at the current state.
std::vector<GraspEvent> check_detach(SystemState &state, const Scenario &scenario);

/// Per-tick grasp resolution after `step`: detach checks, then attach attempts
/// for the rigid gripper and every pad, then landing events for dropped bodies.
/// `prev` is the state before the step and is used to detect landings.
std::vector<GraspEvent> resolve_grasps(const SystemState &prev, SystemState &state,
                                       const Scenario &scenario);

}  // namespace riso
