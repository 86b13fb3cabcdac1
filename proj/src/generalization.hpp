#pragma once

// Reuse of learned meta-actions for new goal entities: relaxed planning
// names the action that achieves the goal, and a successful pinned
// exploration widens the type sets of the entities it was applied to.

#include <optional>
#include <string>
#include <vector>

#include "planner.hpp"

namespace skillforge {

struct GeneralizationCandidate {
  std::string action;
  PlanStep step;                    // as it appears in the relaxed plan
  std::vector<PlanStep> plan;       // the relaxed plan
  std::vector<std::string> slots;   // parameters bound to goal entities
  // (goal entity, type) pairs the relaxed plan relies on: slots of any plan
  // step whose effect supports the goal or a later step's precondition.
  std::vector<std::pair<std::string, std::string>> supporting_types;
};

// Solves the task with goal entities relaxed to every type; the candidate
// is the last plan step whose ground effects contain a goal literal.
// Empty when the task has no meta-action or the relaxed task is not solved.
std::optional<GeneralizationCandidate> extract_candidate(const PlanningTask& task,
                                                         const PlannerOptions& options = {});

// The goal entities and position samples bound by the surviving candidate
// step gain the slot's type where they lack it. Throws
// Error(kCandidateDropped) when no step of the refined sequence applies the
// candidate action to the goal entities.
PlanningTask adopt_types(const PlanningTask& task, const GeneralizationCandidate& candidate,
                         const std::vector<PlanStep>& refined);

}  // namespace skillforge
