#pragma once

// Embedded STRIPS planner: typed grounding plus greedy best-first search on
// the goal-count heuristic, with an optimal breadth-first mode.

#include <cstddef>
#include <string>
#include <vector>

#include "symbolic.hpp"

namespace skillforge {

// One step of a parameterized sequence.
struct PlanStep {
  std::string action;
  std::vector<std::string> args;
  ContinuousArgs extra;

  bool operator==(const PlanStep&) const = default;
};

std::string to_string(const PlanStep& step);

// One "(action arg ...)" per line; blank lines and `;` comments are skipped.
// Throws Error(kSyntax).
std::vector<PlanStep> parse_plan(const std::string& text);

struct GroundAction {
  std::string action;
  std::vector<std::string> args;
  std::vector<Literal> pre;  // equality already evaluated away
  std::vector<Literal> eff;
};

enum class PlanStatus { kSolved, kUnsolvable, kBudgetExhausted };

struct PlanOutcome {
  PlanStatus status = PlanStatus::kUnsolvable;
  std::vector<PlanStep> plan;
  std::size_t expanded = 0;
};

struct PlannerOptions {
  std::size_t node_budget = 200000;
  bool optimal = false;
};

// All type-consistent groundings that satisfy the equality constraints,
// ordered by (action name, arguments). With `prune_static`, groundings whose
// static preconditions (predicates no action changes) fail in the initial
// state are dropped as well.
std::vector<GroundAction> ground_actions(const PlanningTask& task, bool prune_static = false);

PlanOutcome solve(const PlanningTask& task, const PlannerOptions& options = {});

// Replays the plan from the task's initial state; returns false (and an
// explanation) on the first inapplicable step or an unmet goal.
bool validate_plan(const PlanningTask& task, const std::vector<PlanStep>& plan,
                   std::string* why = nullptr);

// Symbolic state reached by applying the steps' declared effects.
SymbolicState progress(const PlanningTask& task, SymbolicState state,
                       const std::vector<PlanStep>& steps);

// Goal entities receive every declared type.
PlanningTask relax_goal_entity_types(const PlanningTask& task,
                                     const std::vector<std::string>& goal_entities);

std::vector<std::string> goal_entities(const std::vector<Literal>& goal);

}  // namespace skillforge
