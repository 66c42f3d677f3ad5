#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riso/adhesion.hpp"
#include "riso/vec3.hpp"

namespace riso {

/// Raised for invalid scenario/configuration content.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed runtime input (non-finite commands, bad frames).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char *kRigidTag = "rigid";

/// A grasp mechanism: the rigid pinch or one of the soft pads, located at a
/// fixed offset from the end-effector.
struct GraspType {
  std::string tag;
  Vec3 offset;

  bool is_rigid() const { return tag == kRigidTag; }
};

/// Static description of an object on the table. `pose` is the center of the
/// object's top (contact) surface; the object rests with pose.z == height.
struct SceneObject {
  std::string id;
  Pose pose;
  double mass = 0.1;             // kg, whole object (all items of a pile)
  double contact_radius = 0.01;  // m, per item
  double width = 0.03;           // m, pinch span
  double height = 0.02;          // m
  double adhesion_energy = 10.0; // J/m^2
  double friction_mu = 0.5;
  int count = 1;
  std::string intended_grasp;    // benchmark hint; empty when unspecified

  double item_mass() const { return mass / count; }
};

struct GripperParams {
  std::vector<GraspType> grasp_types;
  double stroke = 0.08;           // m
  double f_max = 70.0;            // N
  double capture_radius = 0.02;   // m, rigid xy capture
  double rigid_z_tolerance = 0.01;
  double contact_tolerance = 0.01;  // m, soft pad z contact band
  Pose initial_ee;
  double initial_f = 0.0;
  double initial_P = 0.0;
};

struct PhysicsParams {
  double g = 9.81;
  double dt = 0.05;
  double v_max = 0.25;
  double budget_per_object = 120.0;  // s of simulated time
};

struct AssistParams {
  double alpha = 0.4;
  double beta = 5.0;
  double k_R = 1.0;             // 1/s
  double epsilon = 1e-6;        // belief floor
  double length_scale = 1.0;    // m; distances in the human model are in these units
  bool normalize_likelihood = false;  // per-hypothesis normalizer over the action lattice
  bool alignment_hold = true;   // servo on the MAP pair once it is confident
  double hold_threshold = 0.8;
  bool transport_assist = true; // steer held objects toward the bin
  double carry_clearance = 0.06;  // m above the bin rim for transport
};

struct PriorEntry {
  std::string object;
  std::string grasp;
  double p = 0.0;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  std::vector<SceneObject> objects;
  Box workspace{{-0.2, -0.5, 0.0}, {1.0, 0.5, 0.6}};
  Box table_region{{-0.2, -0.5, 0.0}, {0.55, 0.5, 0.6}};
  Box bin{{0.65, -0.12, 0.0}, {0.9, 0.12, 0.12}};
  GripperParams gripper;
  AdhesionParams adhesion;
  PhysicsParams physics;
  AssistParams assist;
  std::vector<PriorEntry> prior;  // empty means uniform

  const SceneObject &object(const std::string &id) const;
  const GraspType &grasp_type(const std::string &tag) const;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Items of one object that move together: the whole object initially, or a
/// subset split off a pile by a soft grasp.
struct Body {
  std::string object_id;
  Pose pose;
  int count = 1;
  double vz = 0.0;
  std::optional<std::string> attached_to;  // grasp tag while held
  Vec3 attach_offset;                      // pose - grasp frame, while held
  double contact_radius = 0.0;             // effective radius of a soft hold

  bool attached() const { return attached_to.has_value(); }
};

struct Attachment {
  std::string object_id;
  std::string grasp;
};

struct SystemState {
  Pose ee;
  double f = 0.0;
  double P = 0.0;
  std::vector<Body> bodies;
  long tick = 0;
  double time = 0.0;
  // Commanded pressures of recent ticks, newest last; (tick, P).
  std::vector<std::pair<long, double>> pressure_log;

  std::vector<Attachment> attachments() const;
  bool is_attached(const std::string &object_id) const;
  /// Pressure acting on the pads after the switching delay.
  double effective_pressure(int delay_ticks, double initial_P) const;

  friend bool operator==(const SystemState &, const SystemState &);
};

bool operator==(const Body &a, const Body &b);

struct OperatorInput {
  Vec3 a_H;
  double df = 0.0;
  double dP = 0.0;

  bool active() const { return a_H != Vec3{} || df != 0.0 || dP != 0.0; }
  friend bool operator==(const OperatorInput &, const OperatorInput &) = default;
};

/// Initial state: end-effector at its configured start, one body per object.
SystemState initial_state(const Scenario &scenario);

/// Number of ticks by which pad pressure lags the command.
int switching_delay_ticks(const Scenario &scenario);

/// Saturating update of grip force and chamber pressure.
SystemState integrate_gripper_channels(SystemState state, double df, double dP,
                                       const Scenario &scenario);

/// Pose of a grasp frame: ee + offset.
Pose grasp_frame_pose(const SystemState &state, const GraspType &g);
Pose grasp_frame_pose(const SystemState &state, const std::string &tag, const Scenario &scenario);
Pose grasp_frame_pose(const Pose &ee, const GraspType &g);

/// End-effector position after moving with velocity `a` for one tick.
Pose next_ee(const Pose &ee, const Vec3 &a, const Scenario &scenario);

/// One tick of the transition function: kinematics, channel integration,
/// rigid carriage of attached bodies, and gravity for free bodies. Grasp and
/// release decisions are made separately (see grasping.hpp).
SystemState step(const SystemState &state, const Vec3 &a, double df, double dP,
                 const Scenario &scenario);

/// Height of the surface under `p`: the bin floor inside the bin, else the table.
double support_height(const Pose &p, const Scenario &scenario);

/// True when the body is attached, or free with nothing left to fall.
bool at_rest(const Body &body, const Scenario &scenario);

/// True when the body rests inside the bin.
bool in_bin(const Body &body, const SceneObject &obj, const Scenario &scenario);

}  // namespace riso
