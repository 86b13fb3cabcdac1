// Command-line front end; talks to the library through the C interface only.

#include <skillforge/skillforge.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;  // unsolvable / exhausted

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Carries an sf_status out of a failed library call.
struct LibError : std::runtime_error {
  sf_status status;
  LibError(sf_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(sf_status s) {
  if (s != SF_OK) {
    throw LibError(s, std::string(sf_status_name(s)) + ": " + sf_last_error());
  }
}

// Owns a library-allocated string.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Line-delimited JSON log. The first line echoes the configuration.
class RunLog {
 public:
  RunLog(fs::path path, const std::string& command, json config) : path_(std::move(path)) {
    config["event"] = "config";
    config["command"] = command;
    config["version"] = sf_version();
    config["time"] = timestamp();
    lines_ += config.dump() + "\n";
  }
  void event(json e) { lines_ += e.dump() + "\n"; }
  void raw(const std::string& jsonl) { lines_ += jsonl; }
  void flush() const { write_text(path_, lines_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::string lines_;
};

struct Global {
  std::string out_dir = "skillforge-out";
  std::string log_level = "info";

  // SKILLFORGE_OUT replaces any output directory given on the command line.
  fs::path dir(const std::string& requested) const {
    if (const char* env = std::getenv("SKILLFORGE_OUT"); env && *env) return env;
    return requested.empty() ? fs::path(out_dir) : fs::path(requested);
  }
  bool quiet() const { return log_level == "quiet"; }
};

void note(const Global& g, const std::string& msg) {
  if (!g.quiet()) std::cerr << msg << "\n";
}

// ---- plan -------------------------------------------------------------------

struct PlanArgs {
  std::string domain, problem;
  bool optimal = false;
  std::uint64_t budget = 0;
};

int cmd_plan(const Global& g, const PlanArgs& a) {
  RunLog log(g.dir("") / "plan.jsonl", "plan",
             {{"domain", a.domain}, {"problem", a.problem}, {"optimal", a.optimal},
              {"node_budget", a.budget}, {"out_dir", g.dir("").string()}});
  const std::string d = read_text(a.domain), p = read_text(a.problem);
  sf_task* task = nullptr;
  check(sf_task_parse(d.c_str(), p.c_str(), &task));
  std::unique_ptr<sf_task, void (*)(sf_task*)> guard(task, sf_task_free);
  sf_plan_outcome outcome{};
  OwnedString plan;
  check(sf_task_plan(task, a.optimal ? 1 : 0, a.budget, &outcome, &plan.p));
  const char* names[] = {"solved", "unsolvable", "budget"};
  log.event({{"event", "result"}, {"outcome", names[outcome]}, {"plan", plan.str()}});
  log.flush();
  if (outcome == SF_PLAN_SOLVED) {
    std::cout << plan.str();
    return kExitOk;
  }
  std::cout << (outcome == SF_PLAN_UNSOLVABLE ? "UNSOLVABLE" : "BUDGET") << "\n";
  return kExitNegative;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string scene, script;
};

int cmd_simulate(const Global& g, const SimulateArgs& a) {
  RunLog log(g.dir("") / "simulate.jsonl", "simulate",
             {{"scene", a.scene}, {"script", a.script}, {"out_dir", g.dir("").string()}});
  sf_world* world = nullptr;
  check(sf_world_load(a.scene.c_str(), &world));
  std::unique_ptr<sf_world, void (*)(sf_world*)> guard(world, sf_world_free);
  OwnedString initial, report;
  check(sf_world_predicates(world, &initial.p));
  int failures = 0;
  check(sf_world_run_script(world, a.script.c_str(), &report.p, &failures));
  std::cout << "# 0 initial\n" << initial.str() << report.str();
  log.event({{"event", "result"}, {"failed_steps", failures}});
  log.flush();
  return kExitOk;
}

// ---- explore ----------------------------------------------------------------

struct ExploreArgs {
  std::string scene, goal, demo, prior, out;
  std::string strategy = "full-length";
  int max_len = 4;
  std::int64_t iters = 5000;
  std::int64_t sim_steps = -1;
  std::uint64_t seed = 0;
  bool all_skills = false;
};

int cmd_explore(const Global& g, const ExploreArgs& a) {
  const fs::path dir = g.dir(a.out);
  sf_explore_options o;
  sf_explore_options_init(&o);
  o.scene_path = a.scene.c_str();
  o.goal_path = a.goal.c_str();
  o.demo_path = a.demo.empty() ? nullptr : a.demo.c_str();
  o.prior_path = a.prior.empty() ? nullptr : a.prior.c_str();
  o.strategy = a.strategy.c_str();
  o.max_len = a.max_len;
  o.iterations = a.iters;
  o.max_sim_steps = a.sim_steps;
  o.seed = a.seed;
  o.all_skills = a.all_skills ? 1 : 0;

  json echo{{"out_dir", dir.string()}, {"all_skills", a.all_skills}};
  sf_explore_run* run = nullptr;
  if (sf_status st = sf_explore(&o, &run); st != SF_OK) {
    const std::string what = sf_last_error();
    RunLog log(dir / "run.jsonl", "explore",
               {{"scene", a.scene}, {"goal", a.goal}, {"demo", a.demo}, {"prior", a.prior},
                {"strategy", a.strategy}, {"max_len", a.max_len}, {"iterations", a.iters},
                {"max_sim_steps", a.sim_steps}, {"seed", a.seed}, {"out_dir", dir.string()},
                {"all_skills", a.all_skills}});
    log.event({{"event", "error"}, {"status", sf_status_name(st)}, {"message", what}});
    log.flush();
    throw LibError(st, std::string(sf_status_name(st)) + ": " + what);
  }
  std::unique_ptr<sf_explore_run, void (*)(sf_explore_run*)> guard(run, sf_explore_free);

  // The library's log starts with its configuration echo; the CLI's own
  // settings are merged into that line.
  OwnedString lib_log, seq, domain;
  check(sf_explore_log(run, &lib_log.p));
  std::string text = lib_log.str();
  const auto eol = text.find('\n');
  json config = json::parse(text.substr(0, eol));
  config.erase("event");
  config.update(echo);
  RunLog log(dir / "run.jsonl", "explore", config);
  log.raw(eol == std::string::npos ? "" : text.substr(eol + 1));
  log.flush();
  const bool found = sf_explore_found(run) != 0;
  if (found) {
    check(sf_explore_sequence(run, &seq.p));
    check(sf_explore_domain(run, &domain.p));
    write_text(dir / "domain.pddl", domain.str());
    write_text(dir / "sequence.txt", seq.str());
    std::cout << seq.str();
    note(g, "found after " + std::to_string(sf_explore_iterations(run)) + " iterations; wrote " +
                (dir / "domain.pddl").string());
    return kExitOk;
  }
  std::cout << "EXHAUSTED\n";
  note(g, "no sequence after " + std::to_string(sf_explore_iterations(run)) + " iterations");
  return kExitNegative;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  bool all = false;
  std::vector<std::string> scenarios, methods;
  int runs = 20;
  std::int64_t iters = 5000;
  std::int64_t mcts_iters = 20000;
  std::int64_t sim_steps = -1;
  std::uint64_t seed_base = 0;
  double alpha = 0.6;
  int depth = -1;
  int max_len = -1;
  std::string out = "results.csv";
};

int cmd_bench(const Global& g, const BenchArgs& a) {
  if (!a.all && a.scenarios.empty()) throw CLI::ValidationError("bench", "--all or --scenario is required");
  fs::path out = a.out;
  if (std::getenv("SKILLFORGE_OUT") && out.is_relative()) out = g.dir("") / out;

  std::vector<const char*> sc, me;
  for (const auto& s : a.scenarios) sc.push_back(s.c_str());
  for (const auto& m : a.methods) me.push_back(m.c_str());
  sf_bench_options o;
  sf_bench_options_init(&o);
  o.scenarios = a.all ? nullptr : sc.data();
  o.scenario_count = a.all ? 0 : sc.size();
  o.methods = me.data();
  o.method_count = me.size();
  o.runs = a.runs;
  o.seed_base = a.seed_base;
  o.exploration_iterations = a.iters;
  o.mcts_iterations = a.mcts_iters;
  o.max_sim_steps = a.sim_steps;
  o.alpha = a.alpha;
  o.depth = a.depth;
  o.max_len = a.max_len;

  json scen = a.all ? json("all") : json(a.scenarios);
  json meth = a.methods.empty() ? json("all") : json(a.methods);
  RunLog log(fs::path(out).replace_extension(".jsonl"), "bench",
             {{"scenarios", scen}, {"methods", meth}, {"runs", a.runs}, {"iters", a.iters},
              {"mcts_iters", a.mcts_iters}, {"sim_steps", a.sim_steps},
              {"seed_base", a.seed_base}, {"alpha", a.alpha}, {"depth", a.depth},
              {"max_len", a.max_len}, {"out", out.string()}});
  struct Ctx {
    RunLog* log;
    const Global* g;
  } ctx{&log, &g};
  auto on_row = [](const char* row, void* user) {
    auto* c = static_cast<Ctx*>(user);
    c->log->event({{"event", "record"}, {"row", row}});
    note(*c->g, row);
  };
  sf_bench* bench = nullptr;
  check(sf_bench_run(&o, on_row, &ctx, &bench));
  std::unique_ptr<sf_bench, void (*)(sf_bench*)> guard(bench, sf_bench_free);
  OwnedString csv, summary;
  check(sf_bench_csv(bench, &csv.p));
  write_text(out, csv.str());
  check(sf_bench_summary(bench, &summary.p));
  log.event({{"event", "summary"}, {"text", summary.str()}});
  log.flush();
  std::cout << summary.str();
  return kExitOk;
}

// ---- inspect ----------------------------------------------------------------

struct InspectArgs {
  std::string domain, problem, csv, scenario, write;
  bool scenarios = false;
  bool canonical = false;
};

int cmd_inspect(const Global&, const InspectArgs& a) {
  OwnedString out;
  if (!a.scenario.empty()) {
    OwnedString dt, pt;
    check(sf_scenario_task(a.scenario.c_str(), &dt.p, &pt.p));
    if (!a.write.empty()) {
      write_text(fs::path(a.write) / "domain.pddl", dt.str());
      write_text(fs::path(a.write) / "problem.pddl", pt.str());
      return kExitOk;
    }
    std::cout << dt.str() << pt.str();
    return kExitOk;
  }
  if (a.scenarios) {
    check(sf_scenarios(&out.p));
  } else if (!a.csv.empty()) {
    check(sf_bench_summarize_csv(read_text(a.csv).c_str(), &out.p));
  } else if (!a.domain.empty() && !a.problem.empty()) {
    const std::string d = read_text(a.domain), p = read_text(a.problem);
    sf_task* task = nullptr;
    check(sf_task_parse(d.c_str(), p.c_str(), &task));
    std::unique_ptr<sf_task, void (*)(sf_task*)> guard(task, sf_task_free);
    if (a.canonical) {
      OwnedString dt, pt;
      check(sf_task_serialize(task, &dt.p, &pt.p));
      std::cout << dt.str() << pt.str();
      return kExitOk;
    }
    check(sf_task_describe(task, &out.p));
  } else if (!a.domain.empty()) {
    const std::string d = read_text(a.domain);
    if (a.canonical) {
      check(sf_domain_canonical(d.c_str(), &out.p));
      std::cout << out.str();
      return kExitOk;
    }
    check(sf_domain_describe(d.c_str(), &out.p));
  } else {
    throw CLI::ValidationError("inspect", "one of --domain, --csv or --scenarios is required");
  }
  std::cout << out.str() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skillforge: planning with learned skill abstractions"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "Directory for logs and artifacts")
      ->default_val(g.out_dir);
  app.add_option("--log-level", g.log_level, "info or quiet")
      ->check(CLI::IsMember({"info", "quiet"}))
      ->default_val(g.log_level);

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Solve a PDDL task");
  plan->add_option("--domain", pa.domain, "Domain file")->required()->check(CLI::ExistingFile);
  plan->add_option("--problem", pa.problem, "Problem file")->required()->check(CLI::ExistingFile);
  plan->add_flag("--optimal", pa.optimal, "Breadth-first search (shortest plan)");
  plan->add_option("--budget", pa.budget, "Node expansion budget (0: default)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Replay a skill script in a scene");
  sim->add_option("--scene", sa.scene, "Scene file")->required()->check(CLI::ExistingFile);
  sim->add_option("--script", sa.script, "Script file")->required()->check(CLI::ExistingFile);

  ExploreArgs ea;
  auto* exp = app.add_subcommand("explore", "Search for a skill sequence and extend the domain");
  exp->add_option("--scene", ea.scene, "Scene file")->required()->check(CLI::ExistingFile);
  exp->add_option("--goal", ea.goal, "Goal file")->required()->check(CLI::ExistingFile);
  exp->add_option("--strategy", ea.strategy, "Sequence length strategy")
      ->check(CLI::IsMember({"alternating", "increasing", "full-length"}))
      ->default_val(ea.strategy);
  exp->add_option("--max-len", ea.max_len, "Maximum number of key actions")
      ->check(CLI::PositiveNumber)
      ->default_val(ea.max_len);
  exp->add_option("--iters", ea.iters, "Iteration budget")->default_val(ea.iters);
  exp->add_option("--sim-steps", ea.sim_steps, "Skill-call budget (-1: unlimited)")
      ->default_val(ea.sim_steps);
  exp->add_option("--seed", ea.seed, "Random seed")->required();
  exp->add_option("--demo", ea.demo, "Demonstration file")->check(CLI::ExistingFile);
  exp->add_option("--prior", ea.prior, "Previously learned domain")->check(CLI::ExistingFile);
  exp->add_flag("--all-skills", ea.all_skills, "Sample key actions from all basic skills");
  exp->add_option("--out", ea.out, "Output directory")->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the benchmark matrix");
  auto* all = bench->add_flag("--all", ba.all, "Every scenario");
  bench->add_option("--scenario", ba.scenarios, "Scenario id (repeatable)")->excludes(all);
  bench->add_option("--method", ba.methods, "OA, ONA, OFL, OFLA, OD or MCTS (repeatable)");
  bench->add_option("--runs", ba.runs, "Seeds per cell")->check(CLI::PositiveNumber)->default_val(ba.runs);
  bench->add_option("--iters", ba.iters, "Exploration iteration budget")->default_val(ba.iters);
  bench->add_option("--mcts-iters", ba.mcts_iters, "MCTS iteration budget")->default_val(ba.mcts_iters);
  bench->add_option("--sim-steps", ba.sim_steps, "Shared skill-call budget (-1: unlimited)")
      ->default_val(ba.sim_steps);
  bench->add_option("--seed-base", ba.seed_base, "First seed")->default_val(ba.seed_base);
  bench->add_option("--alpha", ba.alpha, "MCTS widening exponent")
      ->check(CLI::Range(0.0, 1.0))
      ->default_val(ba.alpha);
  bench->add_option("--depth", ba.depth, "MCTS depth limit (-1: scenario default)")
      ->default_val(ba.depth);
  bench->add_option("--max-len", ba.max_len, "Key-action limit (-1: scenario default)")
      ->default_val(ba.max_len);
  bench->add_option("--out", ba.out, "CSV file")->default_val(ba.out);

  InspectArgs ia;
  auto* insp = app.add_subcommand("inspect", "Describe domains, tasks, scenarios or results");
  insp->add_option("--domain", ia.domain, "Domain file")->check(CLI::ExistingFile);
  insp->add_option("--problem", ia.problem, "Problem file")->check(CLI::ExistingFile);
  insp->add_flag("--canonical", ia.canonical, "Print the canonical PDDL instead of JSON");
  insp->add_option("--csv", ia.csv, "Benchmark CSV to summarize")->check(CLI::ExistingFile);
  insp->add_flag("--scenarios", ia.scenarios, "List the scenario registry");
  insp->add_option("--scenario", ia.scenario, "Print a scenario's basic-domain task as PDDL");
  insp->add_option("--write", ia.write, "With --scenario: write domain.pddl and problem.pddl here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*plan) return cmd_plan(g, pa);
    if (*sim) return cmd_simulate(g, sa);
    if (*exp) return cmd_explore(g, ea);
    if (*bench) return cmd_bench(g, ba);
    if (*insp) return cmd_inspect(g, ia);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const LibError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
