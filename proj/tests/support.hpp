#pragma once

// Shared oracles and generators for the unit and acceptance tests. Nothing
// here calls the planner or the symbolic progression under test.

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "planner.hpp"
#include "symbolic.hpp"

namespace testsupport {

using skillforge::PlanningTask;
using skillforge::PlanStep;

// Small random STRIPS task: 2..max_entities entities over a two-branch type
// tree, 2..4 actions with one or two parameters, unary and binary fluents.
PlanningTask random_task(std::mt19937_64& rng, int max_entities = 6);

// Ground actions by brute-force enumeration of parameter tuples.
struct OracleAction {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::pair<skillforge::Atom, bool>> pre;
  std::vector<std::pair<skillforge::Atom, bool>> eff;
};
std::vector<OracleAction> oracle_ground(const PlanningTask& task);

// Breadth-first shortest plan length; nullopt when unsolvable, -2 when the
// reachable space exceeds `cap` states.
std::optional<int> bfs_length(const PlanningTask& task, std::size_t cap = 200000);

// Replays a plan with oracle grounding; true when every step applies and the
// goal holds at the end.
bool oracle_validate(const PlanningTask& task, const std::vector<PlanStep>& plan);

// True when `entity` carries a type at or below `type`, walking the
// hierarchy's parent edges directly.
bool oracle_has_type(const PlanningTask& task, const std::string& entity, const std::string& type);

}  // namespace testsupport
