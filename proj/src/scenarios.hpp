#pragma once

// Scenario registry and the JSON file formats for goals, demonstrations and
// skill scripts.

#include <optional>
#include <string>
#include <vector>

#include "completion.hpp"
#include "pddl.hpp"
#include "skills_domain.hpp"

namespace skillforge {

struct GoalSpec {
  std::vector<Literal> literals;
  std::vector<std::string> observe;  // extra observed predicates

  // Skill fluents, goal predicates and observed predicates.
  std::vector<std::string> vocabulary() const;
};

GoalSpec parse_goal_json(const std::string& text);
GoalSpec load_goal(const std::string& path);

std::vector<KeyAction> parse_demo_json(const std::string& text);
std::vector<KeyAction> load_demo(const std::string& path);

struct Script {
  std::vector<PlanStep> steps;
  std::map<std::string, Vec3> positions;  // extra positions used by the steps
};
Script parse_script_json(const std::string& text);
Script load_script(const std::string& path);

struct ScenarioSpec {
  std::string id;
  std::string scene;  // file names relative to the data directory
  std::string goal;
  std::string demo;
  std::string solution;  // empty when no scripted reference exists
  std::string prior;     // predecessor scenario id or empty
  int reference_length = 0;
  int reference_keys = 0;
  int l_max = 4;
  int mcts_depth = 16;
};

const std::vector<ScenarioSpec>& scenario_specs();
const ScenarioSpec& scenario_spec(const std::string& id);

// SKILLFORGE_DATA overrides the compiled-in data directory.
std::string data_dir();
std::string data_path(const std::string& relative);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct Scenario {
  std::string id;
  SceneSpec scene;
  GoalSpec goal;
  std::vector<KeyAction> demo;
  PlanningTask task;  // basic domain, every world entity, image as s0, goal
};

Scenario make_scenario(const std::string& id, SceneSpec scene, GoalSpec goal,
                       std::vector<KeyAction> demo = {});
Scenario load_scenario(const std::string& id);

// Symbolic task for a world: the domain's types, predicates, actions and
// learned entities, plus every world entity; s0 is the world image.
// Learned positions are registered in the world.
PlanningTask scene_task(World& world, const PlanningTask& domain, const GoalSpec& goal);

// Predicates needed for s0: the vocabulary and everything actions mention.
std::vector<std::string> state_vocabulary(const PlanningTask& task, const GoalSpec& goal);

// Domain task from a learned domain file: learned typing is kept for
// entities that exist in the world, learned positions are kept as entities.
PlanningTask prior_domain(const World& world, const pddl::DomainFragment& prior);

}  // namespace skillforge
