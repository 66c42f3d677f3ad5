#include "riso/scenarios.hpp"

namespace riso {

Scenario base_scenario() {
  Scenario s;
  s.name = "base";
  s.workspace = {{-0.2, -0.5, 0.09}, {1.0, 0.5, 0.6}};
  s.table_region = {{-0.2, -0.5, 0.0}, {0.55, 0.5, 0.6}};
  s.bin = {{0.65, -0.12, 0.0}, {0.9, 0.12, 0.12}};
  s.gripper.grasp_types = {{"rigid", {0.0, 0.0, -0.09}},
                           {"soft_1", {0.0, 0.045, -0.11}},
                           {"soft_2", {0.0, -0.045, -0.11}}};
  s.gripper.initial_ee = {0.2, 0.0, 0.35};
  s.adhesion.c_p = 1.0;
  s.assist.alpha = 0.4;
  s.assist.beta = 5.0;
  s.assist.k_R = 8.0;
  s.assist.length_scale = 0.05;
  s.assist.normalize_likelihood = true;
  return s;
}

namespace {

SceneObject make(const char *id, Pose p, double mass, double R, double width, double height, double G,
                 double mu, int count, const char *grasp) {
  SceneObject o;
  o.id = id;
  o.pose = p;
  o.pose.z = height;
  o.mass = mass;
  o.contact_radius = R;
  o.width = width;
  o.height = height;
  o.adhesion_energy = G;
  o.friction_mu = mu;
  o.count = count;
  o.intended_grasp = grasp;
  return o;
}

}  // namespace

Scenario canonical_scenario() {
  Scenario s = base_scenario();
  s.name = "canonical";
  s.objects = {
      make("block", {0.05, 0.25, 0}, 0.2, 0.02, 0.05, 0.06, 4.0, 0.6, 1, "rigid"),
      make("washer", {0.35, 0.15, 0}, 0.01, 0.012, 0.024, 0.004, 8.0, 0.4, 1, "soft_1"),
      make("candies", {0.15, -0.25, 0}, 0.015, 0.0065, 0.05, 0.012, 6.0, 0.3, 15, "soft_2"),
  };
  return s;
}

Scenario study_scenario() {
  Scenario s = base_scenario();
  s.name = "study";
  // 3 x 5 grid over the table.
  auto at = [](int row, int col) { return Pose{0.0 + 0.17 * row, -0.36 + 0.18 * col, 0.0}; };
  s.objects = {
      make("chocolate_syrup", at(0, 0), 0.6, 0.03, 0.065, 0.20, 2.0, 0.6, 1, "rigid"),
      make("glue_bottle", at(1, 3), 0.15, 0.02, 0.04, 0.12, 2.0, 0.6, 1, "rigid"),
      make("lego_tower", at(2, 1), 0.25, 0.016, 0.032, 0.15, 2.0, 0.7, 1, "rigid"),
      make("beans", at(0, 1), 0.01, 0.006, 0.06, 0.012, 5.0, 0.3, 20, "soft_1"),
      make("dice", at(0, 2), 0.005, 0.008, 0.016, 0.016, 8.0, 0.5, 1, "soft_2"),
      make("fidget_spinner", at(0, 3), 0.03, 0.027, 0.07, 0.012, 0.055, 0.4, 1, "soft_1"),
      make("lego_block", at(0, 4), 0.01, 0.012, 0.032, 0.02, 2.0, 0.5, 1, "soft_2"),
      make("metal_nuts", at(1, 0), 0.032, 0.007, 0.05, 0.01, 4.0, 0.4, 8, "soft_1"),
      make("mms", at(1, 1), 0.015, 0.0065, 0.05, 0.012, 6.0, 0.3, 15, "soft_2"),
      make("plastic_nuts", at(1, 2), 0.003, 0.008, 0.016, 0.008, 6.0, 0.4, 1, "soft_1"),
      make("toy_propeller", at(1, 4), 0.02, 0.02, 0.08, 0.01, 1.0, 0.4, 1, "soft_2"),
      make("toy_wheel_big", at(2, 0), 0.05, 0.028, 0.056, 0.02, 0.14, 0.5, 1, "soft_1"),
      make("toy_wheel_small", at(2, 2), 0.015, 0.015, 0.03, 0.015, 4.0, 0.5, 1, "soft_2"),
      make("washer", at(2, 3), 0.01, 0.012, 0.024, 0.004, 8.0, 0.4, 1, "soft_1"),
      make("wooden_block", at(2, 4), 0.02, 0.015, 0.03, 0.03, 3.0, 0.5, 1, "soft_2"),
  };
  return s;
}

}  // namespace riso
