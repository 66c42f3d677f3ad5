#include "riso/io.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace riso {

namespace {

template <typename T>
void get_opt(const json &j, const char *key, T &out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

void get_vec(const json &j, const char *key, Vec3 &out) {
  if (j.contains(key)) out = vec3_from_json(j.at(key));
}

Box box_from_json(const json &j) { return {vec3_from_json(j.at("min")), vec3_from_json(j.at("max"))}; }
json to_json(const Box &b) { return {{"min", to_json(b.min)}, {"max", to_json(b.max)}}; }

ConfigError parse_error(const std::string &what) {
  return ConfigError("scenario: " + what);
}

}  // namespace

json to_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const json &j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Scenario scenario_from_json(const json &j) {
  Scenario s;
  try {
    get_opt(j, "name", s.name);
    get_opt(j, "seed", s.seed);
    if (j.contains("workspace")) s.workspace = box_from_json(j.at("workspace"));
    if (j.contains("table_region")) s.table_region = box_from_json(j.at("table_region"));
    if (j.contains("bin")) s.bin = box_from_json(j.at("bin"));

    if (j.contains("gripper")) {
      const json &g = j.at("gripper");
      if (g.contains("grasp_types")) {
        for (const auto &t : g.at("grasp_types"))
          s.gripper.grasp_types.push_back({t.at("tag").get<std::string>(), vec3_from_json(t.at("offset"))});
      }
      get_opt(g, "stroke", s.gripper.stroke);
      get_opt(g, "f_max", s.gripper.f_max);
      get_opt(g, "capture_radius", s.gripper.capture_radius);
      get_opt(g, "rigid_z_tolerance", s.gripper.rigid_z_tolerance);
      get_opt(g, "contact_tolerance", s.gripper.contact_tolerance);
      get_vec(g, "initial_ee", s.gripper.initial_ee);
      get_opt(g, "initial_f", s.gripper.initial_f);
      get_opt(g, "initial_P", s.gripper.initial_P);
    }
    if (j.contains("adhesion")) {
      const json &a = j.at("adhesion");
      get_opt(a, "C0", s.adhesion.C0);
      s.adhesion.k_cal = AdhesionParams::default_k_cal(s.adhesion.C0);
      get_opt(a, "k_cal", s.adhesion.k_cal);
      get_opt(a, "c_p", s.adhesion.c_p);
      get_opt(a, "P_min", s.adhesion.P_min);
      get_opt(a, "P_max", s.adhesion.P_max);
      s.adhesion.P_release = s.adhesion.P_max;
      get_opt(a, "P_release", s.adhesion.P_release);
      get_opt(a, "tau_sw", s.adhesion.tau_sw);
      get_opt(a, "pad_radius", s.adhesion.pad_radius);
    }
    if (j.contains("physics")) {
      const json &p = j.at("physics");
      get_opt(p, "g", s.physics.g);
      get_opt(p, "dt", s.physics.dt);
      get_opt(p, "v_max", s.physics.v_max);
      get_opt(p, "budget_per_object", s.physics.budget_per_object);
    }
    if (j.contains("assistance")) {
      const json &a = j.at("assistance");
      get_opt(a, "alpha", s.assist.alpha);
      get_opt(a, "beta", s.assist.beta);
      get_opt(a, "k_R", s.assist.k_R);
      get_opt(a, "epsilon", s.assist.epsilon);
      get_opt(a, "length_scale", s.assist.length_scale);
      get_opt(a, "normalize_likelihood", s.assist.normalize_likelihood);
      get_opt(a, "alignment_hold", s.assist.alignment_hold);
      get_opt(a, "hold_threshold", s.assist.hold_threshold);
      get_opt(a, "transport_assist", s.assist.transport_assist);
      get_opt(a, "carry_clearance", s.assist.carry_clearance);
    }
    if (j.contains("prior")) {
      for (const auto &e : j.at("prior"))
        s.prior.push_back({e.at("object").get<std::string>(), e.at("grasp").get<std::string>(),
                           e.at("p").get<double>()});
    }
    for (const auto &o : j.at("objects")) {
      SceneObject obj;
      obj.id = o.at("id").get<std::string>();
      obj.pose = vec3_from_json(o.at("pose"));
      get_opt(o, "mass", obj.mass);
      get_opt(o, "contact_radius", obj.contact_radius);
      get_opt(o, "width", obj.width);
      get_opt(o, "height", obj.height);
      get_opt(o, "adhesion_energy", obj.adhesion_energy);
      get_opt(o, "friction_mu", obj.friction_mu);
      get_opt(o, "count", obj.count);
      get_opt(o, "intended_grasp", obj.intended_grasp);
      s.objects.push_back(std::move(obj));
    }
  } catch (const json::exception &e) {
    throw parse_error(e.what());
  } catch (const InputError &e) {
    throw parse_error(e.what());
  }
  if (s.gripper.grasp_types.empty()) {
    s.gripper.grasp_types = {{"rigid", {0.0, 0.0, -0.09}},
                             {"soft_1", {0.0, 0.045, -0.11}},
                             {"soft_2", {0.0, -0.045, -0.11}}};
  }
  return s;
}

json to_json(const Scenario &s) {
  json g;
  g["grasp_types"] = json::array();
  for (const auto &t : s.gripper.grasp_types)
    g["grasp_types"].push_back({{"tag", t.tag}, {"offset", to_json(t.offset)}});
  g["stroke"] = s.gripper.stroke;
  g["f_max"] = s.gripper.f_max;
  g["capture_radius"] = s.gripper.capture_radius;
  g["rigid_z_tolerance"] = s.gripper.rigid_z_tolerance;
  g["contact_tolerance"] = s.gripper.contact_tolerance;
  g["initial_ee"] = to_json(s.gripper.initial_ee);
  g["initial_f"] = s.gripper.initial_f;
  g["initial_P"] = s.gripper.initial_P;

  const auto &a = s.adhesion;
  json adh = {{"k_cal", a.k_cal}, {"C0", a.C0},         {"c_p", a.c_p},
              {"P_min", a.P_min}, {"P_max", a.P_max},   {"P_release", a.P_release},
              {"tau_sw", a.tau_sw}, {"pad_radius", a.pad_radius}};
  json phys = {{"g", s.physics.g},
               {"dt", s.physics.dt},
               {"v_max", s.physics.v_max},
               {"budget_per_object", s.physics.budget_per_object}};
  const auto &p = s.assist;
  json assist = {{"alpha", p.alpha},
                 {"beta", p.beta},
                 {"k_R", p.k_R},
                 {"epsilon", p.epsilon},
                 {"length_scale", p.length_scale},
                 {"normalize_likelihood", p.normalize_likelihood},
                 {"alignment_hold", p.alignment_hold},
                 {"hold_threshold", p.hold_threshold},
                 {"transport_assist", p.transport_assist},
                 {"carry_clearance", p.carry_clearance}};
  json objs = json::array();
  for (const auto &o : s.objects) {
    json jo = {{"id", o.id},
               {"pose", to_json(o.pose)},
               {"mass", o.mass},
               {"contact_radius", o.contact_radius},
               {"width", o.width},
               {"height", o.height},
               {"adhesion_energy", o.adhesion_energy},
               {"friction_mu", o.friction_mu},
               {"count", o.count}};
    if (!o.intended_grasp.empty()) jo["intended_grasp"] = o.intended_grasp;
    objs.push_back(std::move(jo));
  }
  json j = {{"name", s.name},
            {"seed", s.seed},
            {"workspace", to_json(s.workspace)},
            {"table_region", to_json(s.table_region)},
            {"bin", to_json(s.bin)},
            {"gripper", g},
            {"adhesion", adh},
            {"physics", phys},
            {"assistance", assist},
            {"objects", objs}};
  if (!s.prior.empty()) {
    json pr = json::array();
    for (const auto &e : s.prior) pr.push_back({{"object", e.object}, {"grasp", e.grasp}, {"p", e.p}});
    j["prior"] = pr;
  }
  return j;
}

Scenario load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw ConfigError("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario &scenario, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << to_json(scenario).dump(2) << '\n';
}

json to_json(const GraspEvent &e) {
  return {{"kind", to_string(e.kind)}, {"object", e.object_id}, {"grasp", e.grasp},
          {"items", e.items},          {"time", e.time}};
}

GraspEvent grasp_event_from_json(const json &j) {
  return {grasp_event_kind_from_string(j.at("kind").get<std::string>()), j.at("object").get<std::string>(),
          j.at("grasp").get<std::string>(), j.at("items").get<int>(), j.at("time").get<double>()};
}

json to_json(const SystemState &s) {
  json bodies = json::array();
  for (const auto &b : s.bodies) {
    json jb = {{"object", b.object_id}, {"pose", to_json(b.pose)}, {"count", b.count}, {"vz", b.vz}};
    if (b.attached()) {
      jb["attached"] = *b.attached_to;
      jb["offset"] = to_json(b.attach_offset);
      jb["contact_radius"] = b.contact_radius;
    }
    bodies.push_back(std::move(jb));
  }
  json plog = json::array();
  for (const auto &[t, p] : s.pressure_log) plog.push_back(json::array({t, p}));
  return {{"ee", to_json(s.ee)}, {"f", s.f},       {"P", s.P},
          {"tick", s.tick},      {"time", s.time}, {"bodies", bodies},
          {"pressure_log", plog}};
}

SystemState state_from_json(const json &j) {
  SystemState s;
  s.ee = vec3_from_json(j.at("ee"));
  s.f = j.at("f").get<double>();
  s.P = j.at("P").get<double>();
  s.tick = j.at("tick").get<long>();
  s.time = j.at("time").get<double>();
  for (const auto &jb : j.at("bodies")) {
    Body b;
    b.object_id = jb.at("object").get<std::string>();
    b.pose = vec3_from_json(jb.at("pose"));
    b.count = jb.at("count").get<int>();
    b.vz = jb.at("vz").get<double>();
    if (jb.contains("attached")) {
      b.attached_to = jb.at("attached").get<std::string>();
      b.attach_offset = vec3_from_json(jb.at("offset"));
      b.contact_radius = jb.at("contact_radius").get<double>();
    }
    s.bodies.push_back(std::move(b));
  }
  for (const auto &e : j.at("pressure_log")) s.pressure_log.emplace_back(e[0].get<long>(), e[1].get<double>());
  return s;
}

namespace {

// Exact log-probabilities in support order; null stands for -inf.
json belief_log_json(const Belief &b) {
  json out = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lp = b.log_probs()[i];
    out.push_back({b.support()[i].first + "/" + b.support()[i].second,
                   std::isinf(lp) ? json(nullptr) : json(lp)});
  }
  return out;
}

Intent split_key(const std::string &key) {
  const auto slash = key.find('/');
  if (slash == std::string::npos) throw InputError("bad belief key '" + key + "'");
  return {key.substr(0, slash), key.substr(slash + 1)};
}

}  // namespace

json to_json(const TickRecord &t) {
  json events = json::array();
  for (const auto &e : t.events) events.push_back(to_json(e));
  return {{"type", "tick"},
          {"tick", t.tick},
          {"time", t.time},
          {"state", to_json(t.state)},
          {"aH", to_json(t.input.a_H)},
          {"df", t.input.df},
          {"dP", t.input.dP},
          {"aR", to_json(t.a_R)},
          {"a", to_json(t.a)},
          {"belief", t.belief.flat()},
          {"belief_log", belief_log_json(t.belief)},
          {"active", t.active},
          {"events", events}};
}

TickRecord tick_from_json(const json &j, const Scenario &scenario) {
  TickRecord t;
  t.tick = j.at("tick").get<long>();
  t.time = j.at("time").get<double>();
  t.state = state_from_json(j.at("state"));
  t.input.a_H = vec3_from_json(j.at("aH"));
  t.input.df = j.at("df").get<double>();
  t.input.dP = j.at("dP").get<double>();
  t.a_R = vec3_from_json(j.at("aR"));
  t.a = vec3_from_json(j.at("a"));
  t.active = j.at("active").get<bool>();
  for (const auto &e : j.at("events")) t.events.push_back(grasp_event_from_json(e));
  std::vector<Intent> support;
  std::vector<double> w;
  try {
    if (j.contains("belief_log")) {
      for (const auto &e : j.at("belief_log")) {
        support.push_back(split_key(e.at(0).get<std::string>()));
        w.push_back(e.at(1).is_null() ? -std::numeric_limits<double>::infinity() : e.at(1).get<double>());
      }
      t.belief = Belief::restore(std::move(support), std::move(w));
    } else {
      for (const auto &[key, p] : j.at("belief").items()) {
        support.push_back(split_key(key));
        w.push_back(p.get<double>());
      }
      if (!support.empty()) t.belief = Belief::from_weights(std::move(support), w);
    }
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("bad belief: ") + e.what());
  }
  (void)scenario;
  return t;
}

json to_json(const EpisodeHeader &h, const Scenario &scenario) {
  return {{"type", "header"}, {"version", h.version}, {"scenario_hash", h.scenario_hash},
          {"seed", h.seed},   {"alpha", h.alpha},     {"beta", h.beta},
          {"mode", to_string(h.mode)}, {"dt", h.dt},  {"scenario", to_json(scenario)}};
}

void write_log(std::ostream &out, const EpisodeLog &log) {
  out << to_json(log.header, log.scenario).dump() << '\n';
  for (const auto &t : log.ticks) out << to_json(t).dump() << '\n';
  out << json{{"type", "end"}, {"status", to_string(log.status)}, {"ticks", log.ticks.size()}}.dump() << '\n';
}

void save_log(const EpisodeLog &log, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write_log(out, log);
}

EpisodeLog read_log(std::istream &in) {
  EpisodeLog log;
  std::string line;
  bool have_header = false;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw InputError("log line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      if (j.value("version", 0) != 1) throw InputError("unsupported log version");
      log.scenario = scenario_from_json(j.at("scenario"));
      log.header.version = 1;
      log.header.scenario_hash = j.at("scenario_hash").get<std::string>();
      log.header.seed = j.at("seed").get<std::uint64_t>();
      log.header.alpha = j.at("alpha").get<double>();
      log.header.beta = j.at("beta").get<double>();
      log.header.mode = mode_from_string(j.at("mode").get<std::string>());
      log.header.dt = j.at("dt").get<double>();
      have_header = true;
    } else if (type == "tick") {
      if (!have_header) throw InputError("log tick before header");
      log.ticks.push_back(tick_from_json(j, log.scenario));
    } else if (type == "end") {
      log.status = episode_status_from_string(j.at("status").get<std::string>());
    } else {
      throw InputError("log line " + std::to_string(lineno) + ": unknown record type");
    }
  }
  if (!have_header) throw InputError("log has no header");
  return log;
}

EpisodeLog load_log(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open log '" + path + "'");
  return read_log(in);
}

json to_json(const MetricsReport &m) {
  json per = json::object();
  for (const auto &[id, o] : m.per_object) per[id] = {{"success", o.success}, {"items_in_bin", o.items_in_bin}};
  return {{"success_rate", m.success_rate}, {"grasp_time", m.grasp_time},
          {"grasp_distance", m.grasp_distance}, {"input_time", m.input_time},
          {"status", m.status}, {"per_object", per}};
}

std::vector<ScriptEntry> script_from_json(const json &j) {
  if (!j.is_array()) throw InputError("script must be a JSON array");
  std::vector<ScriptEntry> out;
  try {
    for (const auto &e : j) {
      ScriptEntry s;
      s.t = e.at("t").get<double>();
      if (e.contains("a_H")) s.input.a_H = vec3_from_json(e.at("a_H"));
      s.input.df = e.value("df", 0.0);
      s.input.dP = e.value("dP", 0.0);
      out.push_back(s);
    }
  } catch (const json::exception &e) {
    throw InputError(std::string("malformed script: ") + e.what());
  }
  return out;
}

json to_json(const std::vector<ScriptEntry> &script) {
  json j = json::array();
  for (const auto &s : script)
    j.push_back({{"t", s.t}, {"a_H", to_json(s.input.a_H)}, {"df", s.input.df}, {"dP", s.input.dP}});
  return j;
}

std::vector<ScriptEntry> load_script(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open script '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw InputError("script '" + path + "' is not valid JSON: " + e.what());
  }
  return script_from_json(j);
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string scenario_hash(const Scenario &scenario) {
  const std::string text = to_json(scenario).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace riso
