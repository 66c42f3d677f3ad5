#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "riso/agents.hpp"
#include "riso/session.hpp"
#include "riso/world.hpp"

namespace riso {

using nlohmann::json;

// Scenario documents. Missing keys take the defaults of the C++ types.
Scenario scenario_from_json(const json &j);
json to_json(const Scenario &scenario);
Scenario load_scenario(const std::string &path);
void save_scenario(const Scenario &scenario, const std::string &path);

json to_json(const Vec3 &v);
Vec3 vec3_from_json(const json &j);

json to_json(const GraspEvent &e);
GraspEvent grasp_event_from_json(const json &j);

/// Full-precision state snapshot (round-trips exactly).
json to_json(const SystemState &s);
SystemState state_from_json(const json &j);

json to_json(const TickRecord &t);
TickRecord tick_from_json(const json &j, const Scenario &scenario);

json to_json(const EpisodeHeader &h, const Scenario &scenario);

/// NDJSON: a header line, one line per tick, and an end line.
void write_log(std::ostream &out, const EpisodeLog &log);
void save_log(const EpisodeLog &log, const std::string &path);
EpisodeLog read_log(std::istream &in);
EpisodeLog load_log(const std::string &path);

json to_json(const MetricsReport &m);

/// Script files: [{"t": s, "a_H": [x,y,z], "df": N, "dP": psi}, ...]
std::vector<ScriptEntry> script_from_json(const json &j);
json to_json(const std::vector<ScriptEntry> &script);
std::vector<ScriptEntry> load_script(const std::string &path);

/// Rounds to `digits` significant decimal digits.
double round_significant(double v, int digits);

}  // namespace riso
