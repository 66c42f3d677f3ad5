#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "riso/inference.hpp"
#include "riso/scenarios.hpp"

using namespace riso;

namespace {

Scenario open_space() {
  Scenario sc = base_scenario();
  sc.workspace = {{-5, -5, -5}, {5, 5, 5}};
  return sc;
}

Scenario two_objects() {
  Scenario sc = base_scenario();
  SceneObject a, b;
  a.id = "a";
  a.pose = {0.2, 0.15, 0.02};
  b.id = "b";
  b.pose = {0.4, -0.1, 0.02};
  sc.objects = {a, b};
  return sc;
}

double sq(const Vec3 &v) { return v.x * v.x + v.y * v.y + v.z * v.z; }

}  // namespace

TEST_CASE("hand-evaluated logit") {
  const Scenario sc = open_space();
  SystemState s = initial_state(sc);
  s.ee = {0, 0, 0};
  const GraspType g{"rigid", {}};
  for (double beta : {1.0, 5.0}) {
    const HumanModel m{beta, 1.0};
    CHECK(likelihood_logit(s, {0.25, 0, 0}, {1, 0, 0}, g, m, sc) ==
          doctest::Approx(beta * 0.02484375).epsilon(1e-13));
  }
}

TEST_CASE("uninformative observations give zero logits") {
  const Scenario sc = two_objects();
  const SystemState s = initial_state(sc);
  for (const auto &g : sc.gripper.grasp_types) {
    CHECK(likelihood_logit(s, {}, sc.objects[0].pose, g, HumanModel{5.0, 0.05}, sc) == 0.0);
    CHECK(likelihood_logit(s, {0.1, 0.2, 0}, sc.objects[0].pose, g, HumanModel{0.0, 0.05}, sc) == 0.0);
    CHECK(observation_logit(s, {}, sc.objects[1].pose, g, HumanModel{5.0, 0.05, true}, sc) == 0.0);
  }
}

TEST_CASE("zero input leaves uniform and delta beliefs unchanged") {
  const Scenario sc = two_objects();
  const SystemState s = initial_state(sc);
  const Belief u = Belief::uniform({"a", "b"}, {"rigid", "soft_1", "soft_2"});
  const Belief u1 = update(u, s, {}, HumanModel{5.0, 0.05}, 1e-6, sc);
  for (std::size_t i = 0; i < u1.size(); ++i) CHECK(u1.prob(i) == doctest::Approx(1.0 / 6).epsilon(1e-14));

  std::vector<double> w(6, 0.0);
  w[4] = 1.0;
  const Belief d = Belief::from_weights(u.support(), w);
  const Belief d1 = update(d, s, {0.2, -0.1, 0.0}, HumanModel{5.0, 0.05}, 0.0, sc);
  CHECK(d1.prob(4) == 1.0);
  for (std::size_t i : {0, 1, 2, 3, 5}) CHECK(d1.prob(i) == 0.0);
}

TEST_CASE("two hypotheses follow a logistic of the logit gap") {
  const Scenario sc = two_objects();
  SystemState s = initial_state(sc);
  const Belief u = Belief::uniform({"a", "b"}, {"rigid"});
  const GraspType g = sc.grasp_type("rigid");
  const Vec3 a{0.1, 0.2, -0.05};
  const double beta = 3.0, L = 0.05;

  // Independent evaluation: one explicit Euler step, squared distances in units of L.
  const Vec3 now = s.ee + g.offset, next = s.ee + a * sc.physics.dt + g.offset;
  auto logit = [&](const Vec3 &o) { return beta * (sq(o - now) - sq(o - next)) / (L * L); };
  const double gap = logit(sc.objects[0].pose) - logit(sc.objects[1].pose);
  const double pa = 1.0 / (1.0 + std::exp(-gap));

  const Belief b = update(u, s, a, HumanModel{beta, L}, 0.0, sc);
  CHECK(b.prob("a", "rigid") == doctest::Approx(pa).epsilon(1e-12));
  CHECK(b.prob("b", "rigid") == doctest::Approx(1 - pa).epsilon(1e-12));
}

TEST_CASE("adding a constant to every logit changes nothing") {
  const Belief u = Belief::from_weights({{"a", "rigid"}, {"b", "rigid"}, {"c", "soft_1"}}, {1, 2, 3});
  const std::vector<double> l{0.3, -1.2, 2.0};
  const Belief x = apply_logits(u, l, 0.0);
  for (double c : {-50.0, 7.0, 700.0}) {
    const Belief y = apply_logits(u, {l[0] + c, l[1] + c, l[2] + c}, 0.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(y.prob(i) == doctest::Approx(x.prob(i)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_logits(u, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("posterior stays normalized and floored") {
  const Scenario sc = two_objects();
  SystemState s = initial_state(sc);
  Belief b = Belief::uniform({"a", "b"}, {"rigid", "soft_1", "soft_2"});
  const HumanModel m{50.0, 0.05, true};
  for (int k = 0; k < 200; ++k) {
    b = update(b, s, {0.25, 0.0, -0.1}, m, 1e-6, sc);
    double total = 0.0;
    for (double p : b.probs()) {
      total += p;
      CHECK(p >= 1e-6 * 0.99);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("MAP ties resolve lexicographically") {
  const Belief u = Belief::uniform({"b", "a"}, {"soft_2", "soft_1"});
  CHECK(map_estimate(u) == Intent{"a", "soft_1"});
  const Belief w = Belief::from_weights({{"z", "rigid"}, {"a", "rigid"}}, {3, 1});
  CHECK(map_estimate(w) == Intent{"z", "rigid"});
  CHECK_THROWS_AS(map_estimate(Belief{}), std::invalid_argument);
}

TEST_CASE("belief construction errors") {
  CHECK_THROWS_AS(Belief::from_weights({{"a", "rigid"}}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Belief::from_weights({{"a", "rigid"}}, {std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  const Belief ok = Belief::restore({{"a", "rigid"}, {"b", "rigid"}}, {std::log(0.25), std::log(0.75)});
  CHECK(ok.prob(1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(Belief::restore({{"a", "rigid"}, {"b", "rigid"}}, {std::log(0.5), std::log(0.6)}),
                  std::invalid_argument);
}

TEST_CASE("prior restricted to remaining objects") {
  const Scenario sc = two_objects();
  const Belief p = Belief::prior(sc, {"b"});
  CHECK(p.size() == sc.gripper.grasp_types.size());
  for (const auto &[o, g] : p.support()) CHECK(o == "b");
}

TEST_CASE("action lattice") {
  const auto &d = action_directions();
  for (std::size_t i = 0; i < 26; ++i) CHECK(norm(d[i]) == doctest::Approx(1.0));
  CHECK(norm(d[26]) == 0.0);
}
