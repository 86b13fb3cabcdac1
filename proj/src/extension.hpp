#pragma once

// Turns a refined, successful sequence into meta-actions, one per segment
// between steps that establish a precondition candidate.

#include <vector>

#include "discovery.hpp"

namespace skillforge {

// `task` supplies s0 (task.init), the goal and the actions of the replayed
// steps; `replay` is the discovery replay of the refined sequence. Each new
// parameter gets a fresh sub-type branched below the entity's base type,
// except a navigation origin, which stays open as a context parameter.
// Throws Error(kExtensionInvalid) when the extended task cannot be solved.
PlanningTask extend_symbolic_description(const PlanningTask& task, const DiscoveryResult& replay,
                                         const std::vector<PredicateChange>& candidates,
                                         const PlannerOptions& options = {});

// Start indices of the segments (the first is always 0).
std::vector<int> segment_starts(int steps, const std::vector<PredicateChange>& candidates);

std::string next_meta_name(const PlanningTask& task);

}  // namespace skillforge
