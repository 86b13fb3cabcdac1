#include "scenarios.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef SKILLFORGE_DATA_DIR
#define SKILLFORGE_DATA_DIR "data"
#endif

namespace skillforge {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSyntax, std::string(what) + ": " + e.what());
  }
}

Literal literal_of(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kInvalidTask, "goal literal must be an array");
  Literal l;
  std::size_t i = 0;
  if (j[0].get<std::string>() == "not") {
    l.positive = false;
    i = 1;
  }
  if (i >= j.size()) throw Error(ErrorCode::kInvalidTask, "goal literal without predicate");
  l.atom.predicate = j[i].get<std::string>();
  for (++i; i < j.size(); ++i) l.atom.args.push_back(j[i].get<std::string>());
  return l;
}

ContinuousArgs extra_of(const json& j) {
  ContinuousArgs c;
  if (j.contains("orientation")) {
    auto o = j["orientation"].get<std::string>();
    if (o == "lying") {
      c.orientation = Orientation::kLying;
    } else if (o == "upright") {
      c.orientation = Orientation::kUpright;
    } else {
      throw Error(ErrorCode::kInvalidTask, "unknown orientation " + o);
    }
  }
  if (j.contains("displacement")) {
    const auto& d = j["displacement"];
    c.displacement = Vec3{d.at(0).get<double>(), d.at(1).get<double>(),
                          d.size() > 2 ? d.at(2).get<double>() : 0.0};
  }
  return c;
}

}  // namespace

std::vector<std::string> GoalSpec::vocabulary() const {
  std::set<std::string> v(kSkillFluents.begin(), kSkillFluents.end());
  for (const auto& l : literals) v.insert(l.atom.predicate);
  v.insert(observe.begin(), observe.end());
  return {v.begin(), v.end()};
}

GoalSpec parse_goal_json(const std::string& text) {
  json j = parse_json(text, "goal");
  GoalSpec g;
  try {
    for (const auto& l : j.at("goal")) g.literals.push_back(literal_of(l));
    const json observe = j.value("observe", json::array());
    for (const auto& p : observe) g.observe.push_back(p.get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidTask, std::string("goal: ") + e.what());
  }
  std::sort(g.literals.begin(), g.literals.end());
  return g;
}

GoalSpec load_goal(const std::string& path) { return parse_goal_json(read_file(path)); }

std::vector<KeyAction> parse_demo_json(const std::string& text) {
  json j = parse_json(text, "demo");
  std::vector<KeyAction> out;
  try {
    for (const auto& k : j.at("keys")) {
      KeyAction a;
      a.action = k.at("action").get<std::string>();
      const json bind = k.value("bind", json::object());
      for (const auto& [var, value] : bind.items()) {
        a.binding[var] = value.get<std::string>();
      }
      a.extra = extra_of(k);
      out.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidTask, std::string("demo: ") + e.what());
  }
  return out;
}

std::vector<KeyAction> load_demo(const std::string& path) { return parse_demo_json(read_file(path)); }

Script parse_script_json(const std::string& text) {
  json j = parse_json(text, "script");
  Script s;
  try {
    for (const auto& st : j.at("steps")) {
      PlanStep p;
      p.action = st.at("action").get<std::string>();
      for (const auto& a : st.at("args")) p.args.push_back(a.get<std::string>());
      p.extra = extra_of(st);
      s.steps.push_back(std::move(p));
    }
    const json positions = j.value("positions", json::object());
    for (const auto& [name, v] : positions.items()) {
      s.positions[name] = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidTask, std::string("script: ") + e.what());
  }
  return s;
}

Script load_script(const std::string& path) { return parse_script_json(read_file(path)); }

const std::vector<ScenarioSpec>& scenario_specs() {
  static const std::vector<ScenarioSpec> specs = {
      {"a", "scenes/cupboard.json", "goals/a.json", "demos/a.json", "solutions/a.json", "", 4, 1, 4, 16},
      {"b", "scenes/shelf.json", "goals/b.json", "demos/b.json", "solutions/b.json", "", 4, 1, 4, 16},
      {"c1", "scenes/desk.json", "goals/c1.json", "demos/c1.json", "solutions/c1.json", "", 8, 2, 4, 16},
      {"c2", "scenes/desk.json", "goals/c2.json", "demos/c2.json", "", "c1", 8, 2, 4, 16},
      {"c3", "scenes/desk.json", "goals/c3.json", "demos/c3.json", "", "c1", 8, 2, 4, 16},
      {"c4", "scenes/desk.json", "goals/c4.json", "demos/c4.json", "", "c1", 8, 2, 4, 16},
      {"d1", "scenes/desk-nested.json", "goals/d1.json", "demos/d1.json", "solutions/d1.json", "", 12, 3,
       6, 24},
      {"d2", "scenes/desk-nested.json", "goals/d2.json", "demos/d2.json", "", "d1", 12, 3, 6, 24},
  };
  return specs;
}

const ScenarioSpec& scenario_spec(const std::string& id) {
  for (const auto& s : scenario_specs()) {
    if (s.id == id) return s;
  }
  throw Error(ErrorCode::kUsage, "unknown scenario '" + id + "'");
}

std::string data_dir() {
  if (const char* env = std::getenv("SKILLFORGE_DATA"); env && *env) return env;
  return SKILLFORGE_DATA_DIR;
}

std::string data_path(const std::string& relative) { return data_dir() + "/" + relative; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

std::vector<std::string> state_vocabulary(const PlanningTask& task, const GoalSpec& goal) {
  auto v = goal.vocabulary();
  std::set<std::string> s(v.begin(), v.end());
  for (const auto& [_, a] : task.actions) {
    for (const auto* lits : {&a.pre, &a.eff}) {
      for (const auto& l : *lits) {
        if (l.predicate != "=") s.insert(l.predicate);
      }
    }
  }
  return {s.begin(), s.end()};
}

PlanningTask scene_task(World& world, const PlanningTask& domain, const GoalSpec& goal) {
  PlanningTask t = domain;
  sync_positions(world, t);
  add_world_entities(t, world);
  t.goal = goal.literals;
  t.init = image(world, t, state_vocabulary(t, goal));
  t.normalize();
  t.validate();
  return t;
}

PlanningTask prior_domain(const World& world, const pddl::DomainFragment& prior) {
  PlanningTask t;
  t.domain_name = prior.name;
  t.types = prior.types;
  t.predicates = prior.predicates;
  t.actions = prior.actions;
  for (const auto& [entity, types] : prior.entity_types) {
    auto loc = prior.locations.find(entity);
    if (!world.has_entity(entity) && loc == prior.locations.end()) continue;
    t.entities[entity].insert(types.begin(), types.end());
    if (loc != prior.locations.end()) t.locations[entity] = loc->second;
  }
  return t;
}

Scenario make_scenario(const std::string& id, SceneSpec scene, GoalSpec goal,
                       std::vector<KeyAction> demo) {
  Scenario s;
  s.id = id;
  s.scene = std::move(scene);
  s.goal = std::move(goal);
  s.demo = std::move(demo);
  World world(s.scene);
  s.task = scene_task(world, basic_domain(), s.goal);
  s.task.problem_name = id.empty() ? "problem" : "scenario-" + id;
  return s;
}

Scenario load_scenario(const std::string& id) {
  const auto& spec = scenario_spec(id);
  return make_scenario(id, SceneSpec::load(data_path(spec.scene)), load_goal(data_path(spec.goal)),
                       load_demo(data_path(spec.demo)));
}

}  // namespace skillforge
