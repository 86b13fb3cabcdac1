#include "completion.hpp"

#include <algorithm>

namespace skillforge {

std::vector<std::string> context_params(const ActionSchema& action) {
  std::vector<std::string> out;
  for (const auto& p : action.params) {
    bool required = false, released = false;
    for (const auto& l : action.pre) {
      if (l.predicate == "near" && l.positive && l.terms.size() == 2 && l.terms[1] == p.name) {
        required = true;
      }
    }
    for (const auto& l : action.eff) {
      if (l.predicate == "near" && !l.positive && l.terms.size() == 2 && l.terms[1] == p.name) {
        released = true;
      }
    }
    if (required && released) out.push_back(p.name);
  }
  return out;
}

namespace {

// Binds the still-open parameters so that all preconditions hold in `state`;
// candidates are tried in lexicographic order.
bool bind_open(const PlanningTask& task, const ActionSchema& action, const SymbolicState& state,
               Binding& b) {
  std::vector<const TypedParam*> open;
  for (const auto& p : action.params) {
    if (!b.count(p.name)) open.push_back(&p);
  }
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == open.size()) return preconditions_met(state, action, b);
    for (const auto& [entity, _] : task.entities) {
      if (!task.entity_has_type(entity, open[i]->type)) continue;
      b[open[i]->name] = entity;
      if (self(self, i + 1)) return true;
    }
    b.erase(open[i]->name);
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

CompletedSequence sequence_completion(const PlanningTask& task, const std::vector<KeyAction>& keys,
                                      const PlannerOptions& options) {
  CompletedSequence out;
  SymbolicState x = task.init;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const int idx = static_cast<int>(i);
    auto it = task.actions.find(keys[i].action);
    if (it == task.actions.end()) {
      throw CompletionFailure(idx, PlanStatus::kUnsolvable, "unknown key action " + keys[i].action);
    }
    const ActionSchema& a = it->second;
    Binding b = keys[i].binding;

    PlanningTask sub = task;
    sub.init = x;
    sub.goal.clear();
    for (const auto& l : a.pre) {
      if (l.predicate == "=") continue;
      bool bound = std::all_of(l.terms.begin(), l.terms.end(),
                               [&](const std::string& t) { return !is_variable(t) || b.count(t); });
      if (bound) sub.goal.push_back(ground(l, b));
    }
    sub.normalize();
    PlanOutcome fill = solve(sub, options);
    if (fill.status != PlanStatus::kSolved) {
      throw CompletionFailure(idx, fill.status,
                              "no fill for key action " + std::to_string(i) + " (" + a.name + ")");
    }
    x = progress(task, x, fill.plan);
    if (!bind_open(task, a, x, b)) {
      throw CompletionFailure(idx, PlanStatus::kUnsolvable,
                              "key action " + std::to_string(i) + " not applicable after its fill");
    }
    for (auto& s : fill.plan) out.steps.push_back(std::move(s));
    PlanStep key{a.name, {}, keys[i].extra};
    for (const auto& p : a.params) key.args.push_back(b.at(p.name));
    out.key_indices.push_back(static_cast<int>(out.steps.size()));
    out.steps.push_back(std::move(key));
    x = apply_effects(x, a, b);
  }
  return out;
}

}  // namespace skillforge
