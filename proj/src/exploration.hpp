#pragma once

// Exploration loop: sample key sequences and parameters, complete them with
// the planner, execute in the world, refine successful sequences and extend
// the symbolic description with meta-actions.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "completion.hpp"
#include "discovery.hpp"
#include "pddl.hpp"
#include "scenarios.hpp"

namespace skillforge {

enum class LengthStrategy { kAlternating, kIncreasing, kFullLength };

LengthStrategy length_strategy_from_string(const std::string& s);
const char* to_string(LengthStrategy s);

struct ExplorationConfig {
  int l_max = 4;
  std::int64_t max_iterations = 5000;  // < 0: unlimited
  double time_budget_s = 0.0;          // <= 0: unlimited
  std::int64_t max_sim_steps = -1;     // skill calls; < 0: unlimited
  LengthStrategy strategy = LengthStrategy::kFullLength;
  std::vector<std::string> key_skill_pool{"move", "place"};
  double r_rel = 1.5;
  int position_samples_per_slot = 8;
  std::uint64_t rng_seed = 0;
  PlannerOptions planner;

  // Throws Error(kUsage) on violated invariants.
  void validate() const;
};

using Rng = std::mt19937_64;

// Uniform integer in [0, n) and real in [lo, hi), independent of the
// standard library's distribution implementations.
std::size_t uniform_index(Rng& rng, std::size_t n);
double uniform_real(Rng& rng, double lo, double hi);

// The iteration-budget analog of the time-based increasing strategy uses
// n / (max_iterations / l_max).
int get_sequence_length(LengthStrategy strategy, int l_max, std::int64_t n, double elapsed_s,
                        double t_max_s, std::int64_t max_iterations = -1);

// Goal entities, entities within r_rel of one of them, and the robot. A
// radius of 0 selects no neighbours.
std::set<std::string> find_relevant_objects(const std::vector<Literal>& goal, const World& world,
                                            double r_rel);

// `l` actions drawn uniformly from the pool; a pinned action takes the last
// slot and only l-1 are drawn.
std::vector<std::string> sample_sequence(int l, const std::vector<std::string>& pool, Rng& rng,
                                         const std::optional<std::string>& pinned = std::nullopt);

// Draws one position uniformly from the union of the inflated boxes of the
// physical entities in `around`, preferring draws whose release box is free
// of static geometry.
Vec3 sample_position(const World& world, const std::set<std::string>& around, Rng& rng,
                     int attempts, const Vec3& object_size);

struct SampledKeys {
  std::vector<KeyAction> keys;
  std::map<std::string, Vec3> positions;  // fresh position samples
};

// Fills every unbound non-context slot of the given key actions: robot slots
// with the robot, entity slots uniformly from type-compatible members of O,
// position slots with fresh samples named pos-<n>. Throws
// Error(kNoCompatibleEntity) when a slot has no candidate.
SampledKeys sample_parameters(const std::vector<KeyAction>& partial, const PlanningTask& task,
                              const std::set<std::string>& relevant, const World& world, Rng& rng,
                              int& sample_counter, int position_attempts);

// Greedy front-to-back single-deletion pass repeated to a fixpoint; every
// test re-executes from `initial`. Top-level steps are deleted as units.
// `keep` marks steps (for example key steps) and is filtered alongside.
std::vector<PlanStep> sequence_refinement(World& world, const WorldState& initial,
                                          const PlanningTask& task, std::vector<PlanStep> seq,
                                          const std::vector<Literal>& goal,
                                          std::vector<bool>* tags = nullptr);

struct ExplorationResult {
  bool found = false;
  std::vector<PlanStep> sequence;  // refined, top-level
  std::vector<PlanStep> flat;      // refined and expanded to basic steps
  int key_steps = 0;               // surviving key actions
  std::vector<PredicateChange> candidates;
  PlanningTask extended;
  std::int64_t iterations = 0;
  double elapsed_ms = 0.0;
  double sim_ms = 0.0;
  std::uint64_t sim_steps = 0;
  std::int64_t sampling_failures = 0;
  std::int64_t completion_failures = 0;
  std::int64_t execution_failures = 0;
  std::vector<std::string> notes;  // run-log events
};

struct ExplorationInput {
  SceneSpec scene;
  GoalSpec goal;
  std::optional<std::vector<KeyAction>> demo;
  std::optional<pddl::DomainFragment> prior;
};

ExplorationResult explore(const ExplorationInput& input, const ExplorationConfig& config);

}  // namespace skillforge
