#pragma once

// The basic skill domain (navigate, grasp, place, move), the symbolic image
// of a world, and execution of parameterized sequences in the world.

#include <string>
#include <vector>

#include "planner.hpp"
#include "world.hpp"

namespace skillforge {

inline const std::vector<std::string> kSkillFluents = {"handempty", "in-gripper", "near"};

// Types, predicates and the four basic actions; no entities.
PlanningTask basic_domain();

std::string symbolic_type(EntityClass c);

// Adds every world entity (robot, bodies, registered positions) with its
// symbolic type and position coordinates. Existing entities keep their types.
void add_world_entities(PlanningTask& task, const World& world);

// Ground atoms over `vocabulary` that hold in the world, restricted to the
// given entities (all task entities when empty).
SymbolicState image(const World& world, const PlanningTask& task,
                    const std::vector<std::string>& vocabulary,
                    const std::set<std::string>& entities = {});

// Registers every task location in the world's position registry.
void sync_positions(World& world, const PlanningTask& task);

// Replaces a meta step by its basic expansion; basic steps pass through.
std::vector<PlanStep> expand_step(const PlanningTask& task, const PlanStep& step);
std::vector<PlanStep> flatten(const PlanningTask& task, const std::vector<PlanStep>& seq);

// Executes one basic step. Navigation steps get their origin argument
// rewritten to the robot's actual anchor before execution.
bool execute_basic(World& world, const PlanningTask& task, PlanStep& step);

bool goal_holds(const World& world, const std::vector<Literal>& goal);

struct Execution {
  bool success = false;
  // Index of the top-level step after which the goal first held (-1: never;
  // 0-based, or -1 with success when it held before any step).
  int goal_step = -1;
  std::vector<PlanStep> executed;  // basic steps as run (normalized)
  std::vector<int> owner;          // top-level index of each executed step
  std::vector<bool> ok;
  std::size_t failures = 0;
};

// Runs the sequence from the world's current state. Failed steps are no-ops;
// the goal is tested after every basic step; execution stops at the first
// top-level step whose expansion reaches the goal when `stop_at_goal`.
Execution execute(World& world, const PlanningTask& task, const std::vector<PlanStep>& seq,
                  const std::vector<Literal>& goal, bool stop_at_goal = true);

}  // namespace skillforge
