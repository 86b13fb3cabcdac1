#pragma once

// Sequence completion: each key action's preconditions become a planning
// goal whose solution is inserted before the key action.

#include <string>
#include <vector>

#include "planner.hpp"

namespace skillforge {

// A key action with a partial binding. Parameters left unbound must be
// determined by the state reached after the fill (for example the robot's
// current location for a navigation origin).
struct KeyAction {
  std::string action;
  Binding binding;
  ContinuousArgs extra;

  bool operator==(const KeyAction&) const = default;
};

struct CompletedSequence {
  std::vector<PlanStep> steps;
  std::vector<int> key_indices;
};

class CompletionFailure : public Error {
 public:
  CompletionFailure(int key_index, PlanStatus status, const std::string& what)
      : Error(ErrorCode::kCompletionFailure, what), key_index_(key_index), status_(status) {}
  int key_index() const { return key_index_; }
  PlanStatus status() const { return status_; }

 private:
  int key_index_;
  PlanStatus status_;
};

// Uses task.init as the starting state and task.entities as the universe.
CompletedSequence sequence_completion(const PlanningTask& task, const std::vector<KeyAction>& keys,
                                      const PlannerOptions& options = {});

// Parameters a key action may leave open: those whose only role is the
// robot's origin (required near the robot and released by the action).
std::vector<std::string> context_params(const ActionSchema& action);

}  // namespace skillforge
