#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "riso/io.hpp"
#include "riso/scenarios.hpp"

using namespace riso;

namespace fs = std::filesystem;

TEST_CASE("scenario JSON round trip") {
  for (const Scenario &sc : {canonical_scenario(), study_scenario()}) {
    const json j = to_json(sc);
    const Scenario back = scenario_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(scenario_hash(back) == scenario_hash(sc));
  }
  const fs::path p = fs::temp_directory_path() / "riso_io_scenario.json";
  save_scenario(canonical_scenario(), p.string());
  CHECK(to_json(load_scenario(p.string())) == to_json(canonical_scenario()));
  fs::remove(p);
}

TEST_CASE("missing scenario keys take defaults") {
  const json j = {{"objects", json::array({{{"id", "cup"}, {"pose", {0.3, 0.0, 0.04}}}})}};
  const Scenario sc = scenario_from_json(j);
  REQUIRE(sc.objects.size() == 1);
  CHECK(sc.objects[0].count == 1);
  CHECK(sc.physics.dt == Scenario{}.physics.dt);
  CHECK(sc.gripper.grasp_types.size() == 3);
}

TEST_CASE("malformed scenarios are configuration errors") {
  CHECK_THROWS_AS(scenario_from_json(json{{"objects", json::array({{{"id", "x"}}})}}), ConfigError);
  CHECK_THROWS_AS(scenario_from_json(json{{"objects", json::array({{{"id", "x"}, {"pose", {1, 2}}}})}}),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);

  const fs::path p = fs::temp_directory_path() / "riso_io_bad.json";
  std::ofstream(p) << "{ not json";
  CHECK_THROWS_AS(load_scenario(p.string()), ConfigError);
  fs::remove(p);
}

TEST_CASE("state snapshots round-trip exactly") {
  const Scenario sc = canonical_scenario();
  Session s(sc, config_from_scenario(sc, Mode::shared));
  OperatorInput in;
  in.a_H = {0.1 / 3, -0.07, -0.0123456789};
  in.dP = -1.0 / 7;
  for (int k = 0; k < 30; ++k) s.tick(in);
  const SystemState st = s.state();
  CHECK(state_from_json(json::parse(to_json(st).dump())) == st);
}

TEST_CASE("tick records round-trip including the belief") {
  const Scenario sc = canonical_scenario();
  Session s(sc, config_from_scenario(sc, Mode::shared));
  OperatorInput in;
  in.a_H = {0.2, 0.1, -0.05};
  TickRecord r;
  for (int k = 0; k < 25; ++k) r = s.tick(in);
  const TickRecord back = tick_from_json(json::parse(to_json(r).dump()), sc);
  CHECK(back.state == r.state);
  CHECK(back.input == r.input);
  CHECK(back.a_R == r.a_R);
  CHECK(back.a == r.a);
  CHECK(back.belief == r.belief);
  CHECK(back.events == r.events);
}

TEST_CASE("episode logs round-trip through NDJSON") {
  const Scenario sc = canonical_scenario();
  SessionConfig cfg = config_from_scenario(sc, Mode::shared);
  cfg.max_ticks = 60;
  std::vector<ScriptEntry> script;
  for (int k = 0; k < 60; ++k) script.push_back({k * sc.physics.dt, {{0.1, 0.05 * std::sin(k), -0.02}, 0.0, 0.0}});
  ScriptOperator op(script, sc.physics.dt);
  const EpisodeLog log = run_episode(sc, op, cfg);

  std::stringstream ss;
  write_log(ss, log);
  const EpisodeLog back = read_log(ss);
  CHECK(identical(log, back));
  CHECK(back.header.mode == Mode::shared);
  CHECK(identical(back, replay(back)));

  std::stringstream bad("{\"type\":\"tick\"}\n");
  CHECK_THROWS_AS(read_log(bad), InputError);
  std::stringstream garbage("nope\n");
  CHECK_THROWS_AS(read_log(garbage), InputError);
}

TEST_CASE("script parsing") {
  const json j = json::parse(R"([{"t": 0.0, "a_H": [0.1, 0, 0]}, {"t": 0.1, "df": 2.5, "dP": -1}])");
  const auto s = script_from_json(j);
  REQUIRE(s.size() == 2);
  CHECK(s[0].input.a_H == Vec3{0.1, 0, 0});
  CHECK(s[1].input.df == 2.5);
  CHECK(s[1].input.dP == -1.0);
  CHECK(script_from_json(to_json(s)).size() == 2);
  CHECK_THROWS_AS(script_from_json(json{{"t", 0}}), InputError);
  CHECK_THROWS_AS(script_from_json(json::parse(R"([{"t": "soon"}])")), InputError);
  CHECK_THROWS_AS(load_script("/nonexistent/script.json"), InputError);
}

TEST_CASE("significant-digit rounding") {
  CHECK(round_significant(0.123456789012, 9) == 0.123456789);
  CHECK(round_significant(-98765.4321, 3) == -98800.0);
  CHECK(round_significant(0.0, 9) == 0.0);
  CHECK(std::isinf(round_significant(INFINITY, 9)));
  CHECK(round_significant(1.0 / 3, 9) == 0.333333333);
}

TEST_CASE("metrics JSON carries the four study measures") {
  MetricsReport m;
  m.success_rate = 50;
  m.grasp_time = 1.5;
  m.per_object["a"] = {true, 2};
  const json j = to_json(m);
  for (const char *k : {"success_rate", "grasp_time", "grasp_distance", "input_time"}) CHECK(j.contains(k));
}
