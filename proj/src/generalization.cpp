#include "generalization.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace skillforge {

std::optional<GeneralizationCandidate> extract_candidate(const PlanningTask& task,
                                                         const PlannerOptions& options) {
  bool has_meta = std::any_of(task.actions.begin(), task.actions.end(),
                              [](const auto& kv) { return kv.second.is_meta(); });
  if (!has_meta) return std::nullopt;
  const auto goal_ents = goal_entities(task.goal);
  PlanningTask relaxed = relax_goal_entity_types(task, goal_ents);
  PlanOutcome o = solve(relaxed, options);
  if (o.status != PlanStatus::kSolved) return std::nullopt;

  for (auto it = o.plan.rbegin(); it != o.plan.rend(); ++it) {
    const ActionSchema& a = task.actions.at(it->action);
    Binding b = make_binding(a, it->args);
    // Slots are the parameters of the effect literals that unify with a goal
    // literal.
    GeneralizationCandidate c{a.name, *it, o.plan, {}, {}};
    for (const auto& pl : a.eff) {
      Literal l = ground(pl, b);
      if (std::find(task.goal.begin(), task.goal.end(), l) == task.goal.end()) continue;
      for (const auto& t : pl.terms) {
        if (is_variable(t) && std::find(c.slots.begin(), c.slots.end(), t) == c.slots.end()) {
          c.slots.push_back(t);
        }
      }
    }
    if (c.slots.empty()) continue;

    const std::size_t last = static_cast<std::size_t>(std::distance(it, o.plan.rend())) - 1;
    for (std::size_t i = 0; i <= last; ++i) {
      const ActionSchema& ai = task.actions.at(o.plan[i].action);
      Binding bi = make_binding(ai, o.plan[i].args);
      std::set<Literal> needed(task.goal.begin(), task.goal.end());
      for (std::size_t j = i + 1; j <= last; ++j) {
        const ActionSchema& aj = task.actions.at(o.plan[j].action);
        for (const auto& l : ground_preconditions(aj, make_binding(aj, o.plan[j].args))) {
          needed.insert(l);
        }
      }
      for (const auto& pl : ai.eff) {
        if (!needed.count(ground(pl, bi))) continue;
        for (const auto& t : pl.terms) {
          if (!is_variable(t)) continue;
          const std::string& e = bi.at(t);
          if (std::find(goal_ents.begin(), goal_ents.end(), e) == goal_ents.end()) continue;
          for (const auto& p : ai.params) {
            std::pair<std::string, std::string> et{e, p.type};
            if (p.name == t && std::find(c.supporting_types.begin(), c.supporting_types.end(),
                                         et) == c.supporting_types.end()) {
              c.supporting_types.push_back(et);
            }
          }
        }
      }
    }
    return c;
  }
  return std::nullopt;
}

PlanningTask adopt_types(const PlanningTask& task, const GeneralizationCandidate& candidate,
                         const std::vector<PlanStep>& refined) {
  const ActionSchema& a = task.actions.at(candidate.action);
  const Binding wanted = make_binding(a, candidate.step.args);
  for (auto it = refined.rbegin(); it != refined.rend(); ++it) {
    if (it->action != candidate.action) continue;
    Binding b = make_binding(a, it->args);
    bool same_goal_entities = std::all_of(candidate.slots.begin(), candidate.slots.end(),
                                          [&](const std::string& s) { return b.at(s) == wanted.at(s); });
    if (!same_goal_entities) continue;
    PlanningTask out = task;
    for (const auto& p : a.params) {
      bool goal_slot = std::find(candidate.slots.begin(), candidate.slots.end(), p.name) !=
                       candidate.slots.end();
      if (!goal_slot && !task.types.is_subtype(p.type, "position")) continue;
      const std::string& e = b.at(p.name);
      if (!out.entity_has_type(e, p.type)) out.entities[e].insert(p.type);
    }
    out.normalize();
    return out;
  }
  throw Error(ErrorCode::kCandidateDropped, "candidate " + candidate.action + " dropped by refinement");
}

}  // namespace skillforge
