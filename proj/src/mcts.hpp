#pragma once

// Monte Carlo tree search over simulator states with progressive widening.
// Edges are feasible skill calls with parameters drawn from the relevant
// entities; the reward is 1 when the goal holds at the reached node.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "exploration.hpp"

namespace skillforge {

// floor(N^alpha) > floor((N-1)^alpha)
bool should_expand(std::uint64_t n, double alpha);

struct MctsConfig {
  double alpha = 0.6;
  int depth_limit = 16;
  std::int64_t max_iterations = 20000;  // < 0: unlimited
  std::int64_t max_sim_steps = -1;      // < 0: unlimited
  std::uint64_t rng_seed = 0;
  double exploration_constant = 1.4142135623730951;
  double r_rel = 1.5;
  int position_samples_per_slot = 8;
  int expansion_attempts = 8;  // skill calls tried per expansion
};

struct MctsNode {
  WorldState state;
  int depth = 0;
  std::uint64_t visits = 0;
  double value = 0.0;  // sum of rewards
  std::vector<std::uint64_t> expansion_visits;  // N at each expansion
  std::vector<PlanStep> edges;
  std::vector<std::unique_ptr<MctsNode>> children;
};

struct MctsResult {
  bool found = false;
  std::vector<PlanStep> path;
  std::int64_t iterations = 0;
  double elapsed_ms = 0.0;
  double sim_ms = 0.0;
  std::uint64_t sim_steps = 0;
  std::size_t nodes = 0;
  std::unique_ptr<MctsNode> root;
  std::map<std::string, Vec3> positions;  // every position the search registered
};

MctsResult mcts_search(const SceneSpec& scene, const GoalSpec& goal, const MctsConfig& config);

}  // namespace skillforge
