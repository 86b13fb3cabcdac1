#include "bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace skillforge {

const char* to_string(Method m) {
  switch (m) {
    case Method::kOA: return "OA";
    case Method::kONA: return "ONA";
    case Method::kOFL: return "OFL";
    case Method::kOFLA: return "OFLA";
    case Method::kOD: return "OD";
    case Method::kMCTS: return "MCTS";
  }
  return "?";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> kAll{Method::kOA,   Method::kONA, Method::kOFL,
                                        Method::kOFLA, Method::kOD,  Method::kMCTS};
  return kAll;
}

Method method_from_string(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Method m : all_methods()) {
    if (u == to_string(m)) return m;
  }
  throw Error(ErrorCode::kUsage, "unknown method: " + s);
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kFound: return "found";
    case RunStatus::kExhausted: return "exhausted";
    case RunStatus::kPriorUnavailable: return "prior-unavailable";
  }
  return "?";
}

const char* const kCsvHeader =
    "scenario,method,seed,success,iterations,wall_ms,sim_steps,solution_len,key_len,sim_time_frac";

std::string to_csv_row(const RunRecord& r) {
  std::ostringstream o;
  o << r.scenario << ',' << r.method << ',' << r.seed << ',' << (r.success ? 1 : 0) << ','
    << r.iterations << ',' << std::fixed << std::setprecision(3) << r.wall_ms << ','
    << r.sim_steps << ',' << r.solution_len << ',' << r.key_len << ',' << std::setprecision(4)
    << r.sim_time_frac;
  return o.str();
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

std::vector<RunRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kSyntax, "unexpected CSV header");
  }
  std::vector<RunRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 10) {
      throw Error(ErrorCode::kSyntax, "line " + std::to_string(lineno) + ": expected 10 fields");
    }
    try {
      RunRecord r;
      r.scenario = f[0];
      r.method = f[1];
      r.seed = std::stoull(f[2]);
      r.success = f[3] == "1";
      r.iterations = std::stoll(f[4]);
      r.wall_ms = std::stod(f[5]);
      r.sim_steps = std::stoull(f[6]);
      r.solution_len = std::stoi(f[7]);
      r.key_len = std::stoi(f[8]);
      r.sim_time_frac = std::stod(f[9]);
      r.status = r.success ? RunStatus::kFound : RunStatus::kExhausted;
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kSyntax, "line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

ExplorationConfig exploration_config(Method m, const ScenarioSpec& spec, const BenchConfig& config,
                                     std::uint64_t seed) {
  ExplorationConfig c;
  c.l_max = config.l_max > 0 ? config.l_max : spec.l_max;
  c.max_iterations = config.exploration_iterations;
  c.max_sim_steps = config.max_sim_steps;
  c.rng_seed = seed;
  switch (m) {
    case Method::kOA: c.strategy = LengthStrategy::kAlternating; break;
    case Method::kONA: c.strategy = LengthStrategy::kIncreasing; break;
    case Method::kOFLA: c.key_skill_pool = {"navigate", "grasp", "place", "move"}; break;
    default: break;
  }
  return c;
}

MctsConfig mcts_config(const ScenarioSpec& spec, const BenchConfig& config, std::uint64_t seed) {
  MctsConfig c;
  c.alpha = config.alpha;
  c.depth_limit = config.depth > 0 ? config.depth : spec.mcts_depth;
  c.max_iterations = config.mcts_iterations;
  c.max_sim_steps = config.max_sim_steps;
  c.rng_seed = seed;
  return c;
}

namespace {

int count_keys(const std::vector<PlanStep>& steps) {
  int n = 0;
  for (const auto& s : steps) n += s.action == "move" || s.action == "place";
  return n;
}

void fill_fraction(RunRecord& r, double sim_ms) {
  r.sim_time_frac = r.wall_ms > 0 ? std::min(1.0, sim_ms / r.wall_ms) : 0.0;
}

}  // namespace

RunRecord run_one(const std::string& scenario, Method method, std::uint64_t seed,
                  const BenchConfig& config, const std::optional<std::string>& prior_domain) {
  const ScenarioSpec& spec = scenario_spec(scenario);
  Scenario sc = load_scenario(scenario);
  RunRecord r;
  r.scenario = scenario;
  r.method = to_string(method);
  r.seed = seed;

  if (method == Method::kMCTS) {
    MctsResult m = mcts_search(sc.scene, sc.goal, mcts_config(spec, config, seed));
    r.success = m.found;
    r.iterations = m.iterations;
    r.wall_ms = m.elapsed_ms;
    r.sim_steps = m.sim_steps;
    r.solution_len = m.found ? static_cast<int>(m.path.size()) : 0;
    r.key_len = m.found ? count_keys(m.path) : 0;
    r.status = m.found ? RunStatus::kFound : RunStatus::kExhausted;
    fill_fraction(r, m.sim_ms);
    return r;
  }

  ExplorationInput in{sc.scene, sc.goal, std::nullopt, std::nullopt};
  if (method == Method::kOD) in.demo = sc.demo;
  if (!spec.prior.empty()) {
    if (!prior_domain) {
      r.status = RunStatus::kPriorUnavailable;
      return r;
    }
    in.prior = pddl::parse_domain(*prior_domain);
  }
  ExplorationResult e = explore(in, exploration_config(method, spec, config, seed));
  r.success = e.found;
  r.iterations = e.iterations;
  r.wall_ms = e.elapsed_ms;
  r.sim_steps = e.sim_steps;
  if (e.found) {
    r.solution_len = static_cast<int>(e.flat.size());
    r.key_len = e.key_steps;
    r.domain = pddl::serialize_domain(pddl::domain_of(e.extended));
  }
  r.status = e.found ? RunStatus::kFound : RunStatus::kExhausted;
  fill_fraction(r, e.sim_ms);
  return r;
}

std::vector<RunRecord> run_matrix(const std::vector<std::string>& scenarios,
                                  const std::vector<Method>& methods, int runs,
                                  std::uint64_t seed_base, const BenchConfig& config,
                                  const std::function<void(const RunRecord&)>& on_record) {
  if (runs < 1) throw Error(ErrorCode::kUsage, "runs must be at least 1");
  for (const auto& s : scenarios) scenario_spec(s);

  // Predecessors first, in registry order.
  std::vector<std::string> order;
  for (const auto& spec : scenario_specs()) {
    if (std::find(scenarios.begin(), scenarios.end(), spec.id) != scenarios.end()) {
      order.push_back(spec.id);
    }
  }

  // (scenario, method) -> seed -> domain of a successful run
  std::map<std::pair<std::string, Method>, std::map<std::uint64_t, std::string>> domains;
  std::set<std::pair<std::string, Method>> completed;
  std::vector<RunRecord> out;

  std::function<void(const std::string&, Method)> ensure = [&](const std::string& id, Method m) {
    if (completed.count({id, m})) return;
    const ScenarioSpec& spec = scenario_spec(id);
    const bool chained = !spec.prior.empty() && m != Method::kMCTS;
    if (chained) ensure(spec.prior, m);
    for (int i = 0; i < runs; ++i) {
      const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i);
      std::optional<std::string> prior;
      if (chained) {
        const auto& pd = domains[{spec.prior, m}];
        auto it = pd.find(seed);
        if (it == pd.end()) it = pd.begin();
        if (it != pd.end()) prior = it->second;
      }
      RunRecord r = run_one(id, m, seed, config, prior);
      if (r.success && !r.domain.empty()) domains[{id, m}][seed] = r.domain;
      if (std::find(scenarios.begin(), scenarios.end(), id) != scenarios.end()) {
        if (on_record) on_record(r);
        out.push_back(std::move(r));
      }
    }
    completed.insert({id, m});
  };
  for (const auto& id : order) {
    for (Method m : methods) ensure(id, m);
  }
  return out;
}

Quartiles quartiles(std::vector<double> v) {
  Quartiles q;
  if (v.empty()) return q;
  std::sort(v.begin(), v.end());
  auto at = [&](double p) {
    double h = p * static_cast<double>(v.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  q.q1 = at(0.25);
  q.q2 = at(0.5);
  q.q3 = at(0.75);
  return q;
}

Summary summarize(const std::vector<RunRecord>& records) {
  Summary s;
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& r : records) {
    std::pair<std::string, std::string> k{r.scenario, r.method};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  for (const auto& [sc, m] : keys) {
    SummaryRow row;
    row.scenario = sc;
    row.method = m;
    std::vector<double> it, steps;
    for (const auto& r : records) {
      if (r.scenario != sc || r.method != m) continue;
      ++row.runs;
      if (r.success) {
        ++row.successes;
        it.push_back(static_cast<double>(r.iterations));
        steps.push_back(static_cast<double>(r.sim_steps));
      } else if (r.status == RunStatus::kPriorUnavailable) {
        ++row.prior_unavailable;
      } else {
        ++row.timeouts;
      }
    }
    row.success_rate = row.runs ? static_cast<double>(row.successes) / row.runs : 0.0;
    row.iterations = quartiles(it);
    row.sim_steps = quartiles(steps);
    s.rows.push_back(row);
  }
  for (const auto& mc : s.rows) {
    if (mc.method != to_string(Method::kMCTS)) continue;
    for (const auto& ours : s.rows) {
      if (ours.scenario != mc.scenario || ours.method == mc.method) continue;
      s.deltas.push_back({ours.scenario, ours.method, ours.success_rate - mc.success_rate,
                          ours.sim_steps.q2 - mc.sim_steps.q2});
    }
  }
  return s;
}

namespace {

std::string num(double v, int precision) {
  if (std::isnan(v)) return "-";
  std::ostringstream o;
  o << std::fixed << std::setprecision(precision) << v;
  return o.str();
}

}  // namespace

std::string format_summary(const Summary& s) {
  std::ostringstream o;
  o << std::fixed;
  o << "scenario method runs success_rate it_q1 it_q2 it_q3 steps_q2 timeouts prior_unavailable\n";
  for (const auto& r : s.rows) {
    o << r.scenario << ' ' << r.method << ' ' << r.runs << ' ' << num(r.success_rate, 3) << ' '
      << num(r.iterations.q1, 1) << ' ' << num(r.iterations.q2, 1) << ' '
      << num(r.iterations.q3, 1) << ' ' << num(r.sim_steps.q2, 1) << ' ' << r.timeouts << ' '
      << r.prior_unavailable << '\n';
  }
  if (!s.deltas.empty()) {
    o << "scenario method success_rate_delta median_steps_delta (vs MCTS)\n";
    for (const auto& d : s.deltas) {
      o << d.scenario << ' ' << d.method << ' ' << num(d.success_rate_delta, 3) << ' '
        << num(d.median_sim_steps_delta, 1) << '\n';
    }
  }
  return o.str();
}

}  // namespace skillforge
