#pragma once

// Precondition discovery: replay a successful sequence, record changes of
// relevant predicates that the executing action does not model, and filter
// them into precondition candidates.

#include <set>
#include <string>
#include <vector>

#include "skills_domain.hpp"

namespace skillforge {

struct PredicateChange {
  Literal literal;  // the new value
  int step = 0;     // index into the replayed basic steps
  PlanStep action;
  bool modelled = false;

  bool operator==(const PredicateChange&) const = default;
};

// Ground atoms over the vocabulary whose arguments are all type-compatible
// members of O. Empty when O is empty.
std::set<Atom> find_relevant_predicates(const std::set<std::string>& relevant,
                                        const std::vector<std::string>& vocabulary,
                                        const PlanningTask& task);

std::vector<PredicateChange> filter_goals(const std::vector<PredicateChange>& changes,
                                          const std::vector<Literal>& goal);
std::vector<PredicateChange> filter_last_action(const std::vector<PredicateChange>& changes,
                                                int last_step);
// Drops changes whose atom changes more than once in `all_changes`.
std::vector<PredicateChange> filter_toggling(const std::vector<PredicateChange>& changes,
                                             const std::vector<PredicateChange>& all_changes);

struct DiscoveryResult {
  std::vector<PlanStep> steps;          // basic steps as replayed
  std::vector<std::set<Atom>> images;   // true relevant atoms before step i (size steps+1)
  std::vector<PredicateChange> changes;  // every change, modelled or not
  std::vector<PredicateChange> candidates;
};

// Replays `seq` (expanded to basic steps) from `initial`.
DiscoveryResult discover(World& world, const WorldState& initial, const PlanningTask& task,
                         const std::vector<PlanStep>& seq, const std::set<std::string>& relevant,
                         const std::vector<std::string>& vocabulary,
                         const std::vector<Literal>& goal);

}  // namespace skillforge
