#include "discovery.hpp"

#include <algorithm>
#include <map>

namespace skillforge {

std::set<Atom> find_relevant_predicates(const std::set<std::string>& relevant,
                                        const std::vector<std::string>& vocabulary,
                                        const PlanningTask& task) {
  std::set<Atom> out;
  if (relevant.empty()) return out;
  for (const auto& name : vocabulary) {
    auto it = task.predicates.find(name);
    if (it == task.predicates.end()) continue;
    const auto& params = it->second.params;
    Atom a{name, std::vector<std::string>(params.size())};
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == params.size()) {
        out.insert(a);
        return;
      }
      for (const auto& e : relevant) {
        if (!task.entities.count(e) || !task.entity_has_type(e, params[i].type)) continue;
        a.args[i] = e;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

std::vector<PredicateChange> filter_goals(const std::vector<PredicateChange>& changes,
                                          const std::vector<Literal>& goal) {
  std::vector<PredicateChange> out;
  for (const auto& c : changes) {
    bool in_goal = std::any_of(goal.begin(), goal.end(),
                               [&](const Literal& g) { return g.atom == c.literal.atom; });
    if (!in_goal) out.push_back(c);
  }
  return out;
}

std::vector<PredicateChange> filter_last_action(const std::vector<PredicateChange>& changes,
                                                int last_step) {
  std::vector<PredicateChange> out;
  for (const auto& c : changes) {
    if (c.step != last_step) out.push_back(c);
  }
  return out;
}

std::vector<PredicateChange> filter_toggling(const std::vector<PredicateChange>& changes,
                                             const std::vector<PredicateChange>& all_changes) {
  std::map<Atom, int> count;
  for (const auto& c : all_changes) ++count[c.literal.atom];
  std::vector<PredicateChange> out;
  for (const auto& c : changes) {
    if (count[c.literal.atom] == 1) out.push_back(c);
  }
  return out;
}

DiscoveryResult discover(World& world, const WorldState& initial, const PlanningTask& task,
                         const std::vector<PlanStep>& seq, const std::set<std::string>& relevant,
                         const std::vector<std::string>& vocabulary,
                         const std::vector<Literal>& goal) {
  const std::set<Atom> rho = find_relevant_predicates(relevant, vocabulary, task);
  auto measure = [&] {
    std::set<Atom> s;
    for (const auto& a : rho) {
      if (world.holds(a)) s.insert(a);
    }
    return s;
  };

  DiscoveryResult r;
  world.restore(initial);
  r.images.push_back(measure());
  for (auto step : flatten(task, seq)) {
    execute_basic(world, task, step);
    const int idx = static_cast<int>(r.steps.size());
    r.steps.push_back(step);
    r.images.push_back(measure());
    const auto& before = r.images[idx];
    const auto& after = r.images[idx + 1];

    const ActionSchema& a = task.actions.at(step.action);
    const auto declared = ground_effects(a, make_binding(a, step.args));
    for (const auto& atom : rho) {
      bool was = before.count(atom) > 0, is = after.count(atom) > 0;
      if (was == is) continue;
      PredicateChange c{{atom, is}, idx, step, false};
      c.modelled = std::find(declared.begin(), declared.end(), c.literal) != declared.end();
      r.changes.push_back(std::move(c));
    }
  }

  std::vector<PredicateChange> unmodelled;
  for (const auto& c : r.changes) {
    if (!c.modelled) unmodelled.push_back(c);
  }
  auto c = filter_goals(unmodelled, goal);
  c = filter_last_action(c, static_cast<int>(r.steps.size()) - 1);
  r.candidates = filter_toggling(c, r.changes);
  return r;
}

}  // namespace skillforge
