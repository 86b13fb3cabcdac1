#include "skills_domain.hpp"

namespace skillforge {

namespace {

ParamLiteral lit(std::string p, std::vector<std::string> terms, bool positive = true) {
  return {std::move(p), std::move(terms), positive};
}

}  // namespace

PlanningTask basic_domain() {
  PlanningTask t;
  t.types.add("robot", kRootType);
  t.types.add("locatable", kRootType);
  t.types.add("position", "locatable");
  t.types.add("receptacle", "locatable");
  t.types.add("movable", "locatable");
  t.types.add("item", "movable");
  t.types.add("lid", "movable");

  auto pred = [&](const std::string& name, std::vector<TypedParam> params) {
    t.predicates[name] = {name, std::move(params)};
  };
  pred("on", {{"?a", "movable"}, {"?b", "locatable"}});
  pred("inside", {{"?c", "receptacle"}, {"?o", "movable"}});
  pred("closed", {{"?c", "receptacle"}});
  pred("near", {{"?r", "robot"}, {"?e", "locatable"}});
  pred("in-gripper", {{"?o", "movable"}});
  pred("handempty", {});
  pred("at-region", {{"?o", "movable"}, {"?p", "position"}});

  ActionSchema nav;
  nav.name = "navigate";
  nav.skill = "navigate";
  nav.params = {{"?r", "robot"}, {"?from", "locatable"}, {"?to", "locatable"}};
  nav.pre = {lit("near", {"?r", "?from"}), lit("=", {"?from", "?to"}, false)};
  nav.eff = {lit("near", {"?r", "?from"}, false), lit("near", {"?r", "?to"})};

  ActionSchema grasp;
  grasp.name = "grasp";
  grasp.skill = "grasp";
  grasp.params = {{"?r", "robot"}, {"?o", "movable"}};
  grasp.pre = {lit("handempty", {}), lit("near", {"?r", "?o"})};
  grasp.eff = {lit("in-gripper", {"?o"}), lit("handempty", {}, false)};

  ActionSchema place;
  place.name = "place";
  place.skill = "place";
  place.params = {{"?r", "robot"}, {"?o", "movable"}, {"?p", "position"}};
  place.pre = {lit("in-gripper", {"?o"}), lit("near", {"?r", "?p"})};
  place.eff = {lit("in-gripper", {"?o"}, false), lit("handempty", {})};

  ActionSchema move;
  move.name = "move";
  move.skill = "move";
  move.params = {{"?r", "robot"}, {"?o", "movable"}};
  move.pre = {lit("in-gripper", {"?o"})};

  for (auto* a : {&nav, &grasp, &place, &move}) {
    a->normalize();
    t.actions[a->name] = *a;
  }
  return t;
}

std::string symbolic_type(EntityClass c) {
  switch (c) {
    case EntityClass::kLid: return "lid";
    case EntityClass::kItem: return "item";
    default: return "receptacle";
  }
}

void add_world_entities(PlanningTask& task, const World& world) {
  task.entities[world.scene().robot].insert("robot");
  for (const auto& name : world.physical_entities()) {
    task.entities[name].insert(symbolic_type(world.spec(name).cls));
  }
  for (const auto& [name, p] : world.positions()) {
    task.entities[name].insert("position");
    task.locations[name] = p;
  }
}

SymbolicState image(const World& world, const PlanningTask& task,
                    const std::vector<std::string>& vocabulary,
                    const std::set<std::string>& entities) {
  if (!entities.empty()) return world.ground(vocabulary, task, entities);
  std::set<std::string> all;
  for (const auto& [name, _] : task.entities) all.insert(name);
  return world.ground(vocabulary, task, all);
}

void sync_positions(World& world, const PlanningTask& task) {
  for (const auto& [name, p] : task.locations) {
    if (!world.is_physical(name)) world.set_position(name, p);
  }
}

std::vector<PlanStep> expand_step(const PlanningTask& task, const PlanStep& step) {
  auto it = task.actions.find(step.action);
  if (it == task.actions.end()) {
    throw Error(ErrorCode::kInvalidTask, "unknown action " + step.action);
  }
  const ActionSchema& a = it->second;
  if (!a.is_meta()) return {step};
  Binding b = make_binding(a, step.args);
  std::vector<PlanStep> out;
  for (const auto& e : a.expansion) {
    PlanStep s{e.action, {}, e.extra};
    for (const auto& arg : e.args) {
      if (!is_variable(arg)) {
        s.args.push_back(arg);
        continue;
      }
      auto bit = b.find(arg);
      if (bit == b.end()) throw Error(ErrorCode::kUnboundVariable, "unbound " + arg);
      s.args.push_back(bit->second);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PlanStep> flatten(const PlanningTask& task, const std::vector<PlanStep>& seq) {
  std::vector<PlanStep> out;
  for (const auto& s : seq) {
    auto e = expand_step(task, s);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

bool execute_basic(World& world, const PlanningTask& task, PlanStep& step) {
  auto it = task.actions.find(step.action);
  if (it == task.actions.end() || it->second.is_meta()) {
    throw Error(ErrorCode::kInvalidTask, "not a basic action: " + step.action);
  }
  const std::string& skill = it->second.skill;
  const auto& args = step.args;
  if (args.empty()) throw Error(ErrorCode::kArityMismatch, "skill call without arguments");
  if (args.front() != world.scene().robot) return world.reject();
  const std::string& target = args.back();
  if (skill == "navigate") {
    if (!world.has_entity(target)) return world.reject();
    if (args.size() >= 3) step.args[1] = world.state().anchor;
    return world.navigate(target);
  }
  if (skill == "grasp") {
    if (!world.is_physical(target) || world.state().anchor != target) return world.reject();
    return world.grasp(target);
  }
  if (skill == "place") {
    if (args.size() < 3 || world.state().held != args[args.size() - 2] ||
        !world.has_position(target) || world.state().anchor != target) {
      return world.reject();
    }
    return world.place(world.position(target), step.extra.orientation);
  }
  if (skill == "move") {
    if (world.state().held != target) return world.reject();
    return world.move(step.extra.displacement.value_or(Vec3{}));
  }
  throw Error(ErrorCode::kInvalidTask, "unknown skill " + skill);
}

bool goal_holds(const World& world, const std::vector<Literal>& goal) {
  for (const auto& l : goal) {
    if (world.holds(l.atom) != l.positive) return false;
  }
  return true;
}

Execution execute(World& world, const PlanningTask& task, const std::vector<PlanStep>& seq,
                  const std::vector<Literal>& goal, bool stop_at_goal) {
  Execution ex;
  if (goal_holds(world, goal)) {
    ex.success = true;
    if (stop_at_goal) return ex;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (auto step : expand_step(task, seq[i])) {
      bool ok = execute_basic(world, task, step);
      if (!ok) ++ex.failures;
      ex.executed.push_back(step);
      ex.owner.push_back(static_cast<int>(i));
      ex.ok.push_back(ok);
      if (ex.goal_step < 0 && goal_holds(world, goal)) {
        ex.goal_step = static_cast<int>(i);
        ex.success = true;
        if (stop_at_goal) return ex;
      }
    }
  }
  if (!stop_at_goal) ex.success = goal_holds(world, goal);
  return ex;
}

}  // namespace skillforge
