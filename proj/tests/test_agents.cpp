#include <doctest.h>

#include <cmath>
#include <limits>

#include "riso/agents.hpp"
#include "riso/scenarios.hpp"
#include "riso/session.hpp"

using namespace riso;

TEST_CASE("rng streams are reproducible") {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("softmax sampling") {
  Rng rng(1);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) CHECK(sample_softmax({0.0, inf, 5.0, inf}, rng) == 1);

  std::vector<int> hits(3, 0);
  for (int i = 0; i < 30000; ++i) ++hits[sample_softmax({0.0, std::log(2.0), -inf}, rng)];
  CHECK(hits[2] == 0);
  CHECK(double(hits[1]) / hits[0] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("mode names") {
  CHECK(mode_from_string(to_string(Mode::human)) == Mode::human);
  CHECK(mode_from_string("shared") == Mode::shared);
  CHECK_THROWS(mode_from_string("auto"));
}

TEST_CASE("script entries map to ticks") {
  OperatorInput a, b, c;
  a.a_H = {0.1, 0, 0};
  b.df = 3.0;
  c.dP = -1.0;
  const ScriptOperator op({{0.0, a}, {0.12, b}, {0.14, c}, {0.25, a}}, 0.05);
  CHECK(op.input_for_tick(0) == a);
  CHECK(op.input_for_tick(1) == OperatorInput{});
  CHECK(op.input_for_tick(2) == c);  // 0.12 and 0.14 share tick 2, later wins
  CHECK(op.input_for_tick(5) == a);  // exactly on a tick boundary
  CHECK(op.last_tick() == 5);
  CHECK(op.input_for_tick(99) == OperatorInput{});
}

TEST_CASE("bad scripts are rejected") {
  OperatorInput nan_in;
  nan_in.df = std::nan("");
  CHECK_THROWS_AS(ScriptOperator({{0.2, {}}, {0.1, {}}}, 0.05), InputError);
  CHECK_THROWS_AS(ScriptOperator({{0.0, nan_in}}, 0.05), InputError);
  CHECK_THROWS_AS(ScriptOperator({{-1.0, {}}}, 0.05), InputError);
  CHECK_THROWS_AS(ScriptOperator({}, 0.0), InputError);
}

TEST_CASE("boltzmann operator heads for its goal") {
  const Scenario sc = canonical_scenario();
  const SystemState s = initial_state(sc);
  const GraspType &g = sc.grasp_type("rigid");
  const Pose goal = sc.objects[0].pose;
  const auto logits = boltzmann_logits(s, goal, g, HumanModel{100.0, 0.05}, sc);
  REQUIRE(logits.size() == action_directions().size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < logits.size(); ++i)
    if (logits[i] > logits[best]) best = i;
  const Vec3 to_goal = goal - grasp_frame_pose(s, g);
  CHECK(dot(action_directions()[best], to_goal) > 0.0);

  Rng rng(3);
  const Vec3 v = sample_boltzmann_action(s, goal, g, HumanModel{3.0, 0.05}, sc, rng);
  CHECK(norm(v) <= sc.physics.v_max * (1 + 1e-12));
}

TEST_CASE("participant is deterministic per seed") {
  const Scenario sc = canonical_scenario();
  SessionConfig cfg = config_from_scenario(sc, Mode::human);
  cfg.max_ticks = 300;
  ParticipantOperator a(ParticipantConfig{}, 11), b(ParticipantConfig{}, 11);
  const EpisodeLog la = run_episode(sc, a, cfg), lb = run_episode(sc, b, cfg);
  CHECK(identical(la, lb));
  REQUIRE_FALSE(la.ticks.empty());
}

TEST_CASE("pick-and-place routine delivers a rigid object") {
  const Scenario sc = canonical_scenario();
  const SceneObject *mug = nullptr;
  for (const auto &o : sc.objects)
    if (o.width < sc.gripper.stroke) mug = &o;
  REQUIRE(mug != nullptr);
  Scenario one = sc;
  one.objects = {*mug};
  PickPlaceRoutine op(mug->id, "rigid");
  const EpisodeLog log = run_episode(one, op, config_from_scenario(one, Mode::human));
  CHECK(op.picked());
  CHECK(log.status == EpisodeStatus::complete);
  CHECK(compute_metrics(log, one).success_rate == 100.0);
}
