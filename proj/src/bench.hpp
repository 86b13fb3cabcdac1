#pragma once

// Benchmark harness: runs method variants over scenarios and seeds, writes
// one CSV row per run and aggregates the rows.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exploration.hpp"
#include "mcts.hpp"

namespace skillforge {

enum class Method { kOA, kONA, kOFL, kOFLA, kOD, kMCTS };

const char* to_string(Method m);
Method method_from_string(const std::string& s);  // throws Error(kUsage)
const std::vector<Method>& all_methods();

enum class RunStatus { kFound, kExhausted, kPriorUnavailable };
const char* to_string(RunStatus s);

struct RunRecord {
  std::string scenario;
  std::string method;
  std::uint64_t seed = 0;
  bool success = false;
  std::int64_t iterations = 0;
  double wall_ms = 0.0;
  std::uint64_t sim_steps = 0;
  int solution_len = 0;
  int key_len = 0;
  double sim_time_frac = 0.0;

  // Not part of the CSV.
  RunStatus status = RunStatus::kExhausted;
  std::string domain;  // serialized extended domain when found (exploration only)
};

extern const char* const kCsvHeader;

std::string to_csv_row(const RunRecord& r);
std::string to_csv(const std::vector<RunRecord>& records);  // header included
std::vector<RunRecord> parse_csv(const std::string& text);  // throws Error(kSyntax)

struct BenchConfig {
  std::int64_t exploration_iterations = 5000;
  std::int64_t mcts_iterations = 20000;
  std::int64_t max_sim_steps = -1;  // shared skill-call budget; < 0: unlimited
  double alpha = 0.6;
  int depth = -1;  // MCTS depth limit; < 0: scenario default
  int l_max = -1;  // < 0: scenario default
};

ExplorationConfig exploration_config(Method m, const ScenarioSpec& spec, const BenchConfig& config,
                                     std::uint64_t seed);
MctsConfig mcts_config(const ScenarioSpec& spec, const BenchConfig& config, std::uint64_t seed);

// One run. Scenarios with a predecessor need its domain; without one the
// record has status kPriorUnavailable.
RunRecord run_one(const std::string& scenario, Method method, std::uint64_t seed,
                  const BenchConfig& config,
                  const std::optional<std::string>& prior_domain = std::nullopt);

// Runs every scenario x method x seed (seeds seed_base .. seed_base+runs-1).
// Predecessors run first; a scenario uses the same method's predecessor
// domain from the same seed, else from the lowest successful seed. A
// predecessor that is not requested is run without being recorded.
std::vector<RunRecord> run_matrix(const std::vector<std::string>& scenarios,
                                  const std::vector<Method>& methods, int runs,
                                  std::uint64_t seed_base, const BenchConfig& config,
                                  const std::function<void(const RunRecord&)>& on_record = {});

struct Quartiles {
  double q1 = std::numeric_limits<double>::quiet_NaN();
  double q2 = std::numeric_limits<double>::quiet_NaN();
  double q3 = std::numeric_limits<double>::quiet_NaN();
};
// Linear interpolation between closest ranks; NaN for an empty sample.
Quartiles quartiles(std::vector<double> values);

struct SummaryRow {
  std::string scenario;
  std::string method;
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  Quartiles iterations;  // among successes
  Quartiles sim_steps;   // among successes
  int timeouts = 0;      // runs that exhausted their budget
  int prior_unavailable = 0;
};

struct DeltaRow {
  std::string scenario;
  std::string method;            // exploration variant compared with MCTS
  double success_rate_delta = 0;  // ours - MCTS
  double median_sim_steps_delta = 0;  // NaN when either side has no success
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::vector<DeltaRow> deltas;
};

Summary summarize(const std::vector<RunRecord>& records);
std::string format_summary(const Summary& s);

}  // namespace skillforge
