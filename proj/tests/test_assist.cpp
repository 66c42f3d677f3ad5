#include <doctest.h>

#include <cmath>

#include "riso/assist.hpp"
#include "riso/scenarios.hpp"

using namespace riso;

namespace {

Scenario pair_scene(double k_R = 1.0) {
  Scenario sc = base_scenario();
  sc.assist.k_R = k_R;
  sc.assist.alignment_hold = false;
  SceneObject a, b;
  a.id = "a";
  a.pose = {0.3, 0.1, 0.02};
  b.id = "b";
  b.pose = {0.3, -0.1, 0.02};
  sc.objects = {a, b};
  return sc;
}

}  // namespace

TEST_CASE("blend endpoints and midpoint") {
  const Vec3 h{0.1, -0.05, 0.02}, r{-0.03, 0.07, 0.0};
  CHECK(blend(h, r, 1.0, 0.25) == h);
  CHECK(blend(h, r, 0.0, 0.25) == r);
  const Vec3 m = blend(h, r, 0.5, 0.25);
  CHECK(m.x == doctest::Approx(0.035));
  CHECK(m.y == doctest::Approx(0.01));
  CHECK(m.z == doctest::Approx(0.01));
  CHECK(norm(blend({1, 0, 0}, {1, 0, 0}, 0.3, 0.25)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(blend(h, r, 1.5, 0.25), ConfigError);
  CHECK_THROWS_AS(blend(h, r, -0.1, 0.25), ConfigError);
  CHECK_THROWS_AS(blend(h, r, std::nan(""), 0.25), ConfigError);
}

TEST_CASE("a delta belief on an aligned pair gives no assistance") {
  const Scenario sc = pair_scene();
  SystemState s = initial_state(sc);
  s.ee = {0.3, 0.1, 0.02};
  s.bodies[0].pose = grasp_frame_pose(s, "rigid", sc);
  const Belief d = Belief::from_weights({{"a", "rigid"}, {"b", "rigid"}}, {1, 0});
  CHECK(assistance_action(d, s, sc) == Vec3{});
}

TEST_CASE("symmetric pair cancels laterally") {
  const Scenario sc = pair_scene();
  SystemState s = initial_state(sc);
  s.ee = {0.3, 0.0, 0.2};
  const Belief u = Belief::uniform({"a", "b"}, {"rigid"});
  const Vec3 a = assistance_action(u, s, sc);
  CHECK(std::abs(a.y) < 1e-15);
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.z < 0.0);
}

TEST_CASE("assistance is the scaled expected displacement, clamped") {
  const Scenario sc = pair_scene(2.0);
  SystemState s = initial_state(sc);
  s.ee = {0.25, 0.05, 0.15};
  const Belief b = Belief::from_weights({{"a", "rigid"}, {"b", "soft_1"}}, {3, 1});
  const Vec3 ra = sc.objects[0].pose - grasp_frame_pose(s, "rigid", sc);
  const Vec3 rb = sc.objects[1].pose - grasp_frame_pose(s, "soft_1", sc);
  const Vec3 want = (ra * 0.75 + rb * 0.25) * 2.0;
  const Vec3 got = assistance_action(b, s, sc);
  REQUIRE(norm(want) < sc.physics.v_max);
  CHECK(norm(got - want) < 1e-15);

  const Scenario fast = pair_scene(100.0);
  CHECK(norm(assistance_action(b, s, fast)) == doctest::Approx(fast.physics.v_max));
  CHECK(assistance_action(Belief{}, s, sc) == Vec3{});
}

TEST_CASE("alignment hold servos on the confident pair only") {
  Scenario sc = pair_scene();
  sc.assist.alignment_hold = true;
  SystemState s = initial_state(sc);
  s.ee = {0.25, 0.0, 0.15};
  const Belief b = Belief::from_weights({{"a", "rigid"}, {"b", "rigid"}}, {0.9, 0.1});
  const Vec3 want = sc.objects[0].pose - grasp_frame_pose(s, "rigid", sc);
  CHECK(norm(assistance_action(b, s, sc) - want) < 1e-15);
  const Belief weak = Belief::from_weights({{"a", "rigid"}, {"b", "rigid"}}, {0.7, 0.3});
  CHECK(norm(assistance_action(weak, s, sc) - expected_displacement(weak, s, sc)) < 1e-15);
}

TEST_CASE("transport heads for the drop point above the bin") {
  const Scenario sc = pair_scene();
  SystemState s = initial_state(sc);
  CHECK(transport_action(s, sc) == Vec3{});

  const Pose drop = bin_drop_point(sc, sc.objects[0]);
  CHECK(drop.x == doctest::Approx(sc.bin.center().x));
  CHECK(drop.z == doctest::Approx(sc.bin.max.z + sc.assist.carry_clearance + sc.objects[0].height));

  s.bodies[0].attached_to = "rigid";
  const Vec3 t = transport_action(s, sc);
  const Vec3 dir = drop - s.bodies[0].pose;
  CHECK(norm(t - clamp_norm(dir * sc.assist.k_R, sc.physics.v_max)) < 1e-15);

  Scenario off = sc;
  off.assist.transport_assist = false;
  CHECK(transport_action(s, off) == Vec3{});
}
