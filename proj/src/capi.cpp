#include <skillforge/skillforge.h>

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <memory>
#include <string>

#include "bench.hpp"
#include "exploration.hpp"
#include "pddl.hpp"
#include "planner.hpp"
#include "scenarios.hpp"
#include "skills_domain.hpp"
#include "world.hpp"

using json = nlohmann::json;
using namespace skillforge;

struct sf_task {
  PlanningTask task;
};

struct sf_world {
  std::unique_ptr<World> world;
  PlanningTask task;
};

struct sf_explore_run {
  ExplorationResult result;
  std::string log;
};

struct sf_bench {
  std::vector<RunRecord> records;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

sf_status fail(sf_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

// Runs `body` and maps exceptions to status codes.
template <typename F>
sf_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SF_OK;
  } catch (const Error& e) {
    return fail(static_cast<sf_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SF_ERR_INTERNAL, "unknown error");
  }
}

#define SF_REQUIRE(p) \
  if (!(p)) return fail(SF_ERR_NULL_ARGUMENT, "null argument: " #p)

std::string plan_text(const std::vector<PlanStep>& steps) {
  std::string out;
  for (const auto& s : steps) {
    out += to_string(s);
    if (s.extra.displacement) {
      const Vec3& d = *s.extra.displacement;
      out += " ; displacement " + pddl::format_number(d.x) + " " + pddl::format_number(d.y) + " " +
             pddl::format_number(d.z);
    }
    if (s.extra.orientation) {
      out += std::string(" ; orientation ") +
             (*s.extra.orientation == Orientation::kLying ? "lying" : "upright");
    }
    out += "\n";
  }
  return out;
}

json literal_json(const Literal& l) { return to_string(l); }

json describe_domain(const pddl::DomainFragment& d) {
  json j;
  j["name"] = d.name;
  json types = json::object();
  for (const auto& [t, parents] : d.types.edges()) types[t] = parents;
  j["types"] = types;
  json preds = json::array();
  for (const auto& [name, p] : d.predicates) {
    json args = json::array();
    for (const auto& a : p.params) args.push_back(a.name + " - " + a.type);
    preds.push_back({{"name", name}, {"params", args}});
  }
  j["predicates"] = preds;
  json actions = json::array();
  for (const auto& [name, a] : d.actions) {
    json params = json::array();
    for (const auto& p : a.params) params.push_back(p.name + " - " + p.type);
    auto lits = [](const std::vector<ParamLiteral>& v) {
      json out = json::array();
      for (const auto& l : v) {
        std::string s = std::string(l.positive ? "" : "not ") + "(" + l.predicate;
        for (const auto& t : l.terms) s += " " + t;
        out.push_back(s + ")");
      }
      return out;
    };
    json act{{"name", name},
             {"kind", a.is_meta() ? "meta" : "basic"},
             {"params", params},
             {"pre", lits(a.pre)},
             {"eff", lits(a.eff)}};
    if (a.is_meta()) {
      json exp = json::array();
      for (const auto& e : a.expansion) {
        std::string s = "(" + e.action;
        for (const auto& t : e.args) s += " " + t;
        exp.push_back(s + ")");
      }
      act["expansion"] = exp;
    } else {
      act["skill"] = a.skill;
    }
    actions.push_back(act);
  }
  j["actions"] = actions;
  json et = json::object();
  for (const auto& [e, ts] : d.entity_types) et[e] = ts;
  j["entity_types"] = et;
  return j;
}

Orientation orientation_from(const std::string& s) {
  if (s == "upright") return Orientation::kUpright;
  if (s == "lying") return Orientation::kLying;
  throw Error(ErrorCode::kUsage, "orientation must be upright or lying");
}

std::string predicates_text(const World& world, const PlanningTask& task) {
  std::vector<std::string> vocab;
  for (const auto& [name, p] : task.predicates) vocab.push_back(name);
  std::string out;
  for (const auto& a : image(world, task, vocab)) out += to_string(a) + "\n";
  return out;
}

void refresh_entities(sf_world& w) {
  add_world_entities(w.task, *w.world);
  w.task.normalize();
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_ERR_SYNTAX: return "syntax";
    case SF_ERR_UNSUPPORTED_REQUIREMENT: return "unsupported-requirement";
    case SF_ERR_UNDECLARED_TYPE: return "undeclared-type";
    case SF_ERR_UNKNOWN_PREDICATE: return "unknown-predicate";
    case SF_ERR_UNKNOWN_ENTITY: return "unknown-entity";
    case SF_ERR_ARITY_MISMATCH: return "arity-mismatch";
    case SF_ERR_UNBOUND_VARIABLE: return "unbound-variable";
    case SF_ERR_DUPLICATE_TYPE: return "duplicate-type";
    case SF_ERR_INVALID_TASK: return "invalid-task";
    case SF_ERR_COMPLETION_FAILURE: return "completion-failure";
    case SF_ERR_EXTENSION_INVALID: return "extension-invalid";
    case SF_ERR_CANDIDATE_DROPPED: return "candidate-dropped";
    case SF_ERR_NO_COMPATIBLE_ENTITY: return "no-compatible-entity";
    case SF_ERR_PRIOR_UNAVAILABLE: return "prior-unavailable";
    case SF_ERR_IO: return "io";
    case SF_ERR_USAGE: return "usage";
    case SF_ERR_NULL_ARGUMENT: return "null-argument";
    case SF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* sf_last_error(void) { return g_last_error.c_str(); }

void sf_string_free(char* s) { std::free(s); }

sf_status sf_task_parse(const char* domain_text, const char* problem_text, sf_task** out) {
  SF_REQUIRE(domain_text);
  SF_REQUIRE(problem_text);
  SF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<sf_task>();
    t->task = pddl::parse_task(domain_text, problem_text);
    *out = t.release();
  });
}

void sf_task_free(sf_task* task) { delete task; }

sf_status sf_task_serialize(const sf_task* task, char** domain_text, char** problem_text) {
  SF_REQUIRE(task);
  return guarded([&] {
    if (domain_text) *domain_text = dup(pddl::serialize_domain(task->task));
    if (problem_text) *problem_text = dup(pddl::serialize_problem(task->task));
  });
}

sf_status sf_task_plan(const sf_task* task, int optimal, uint64_t node_budget,
                       sf_plan_outcome* outcome, char** plan) {
  SF_REQUIRE(task);
  SF_REQUIRE(outcome);
  SF_REQUIRE(plan);
  *plan = nullptr;
  return guarded([&] {
    PlannerOptions o;
    o.optimal = optimal != 0;
    if (node_budget > 0) o.node_budget = static_cast<std::size_t>(node_budget);
    PlanOutcome r = solve(task->task, o);
    switch (r.status) {
      case PlanStatus::kSolved: *outcome = SF_PLAN_SOLVED; break;
      case PlanStatus::kUnsolvable: *outcome = SF_PLAN_UNSOLVABLE; break;
      case PlanStatus::kBudgetExhausted: *outcome = SF_PLAN_BUDGET; break;
    }
    *plan = dup(r.status == PlanStatus::kSolved ? plan_text(r.plan) : "");
  });
}

sf_status sf_task_validate(const sf_task* task, const char* plan, int* valid, char** why) {
  SF_REQUIRE(task);
  SF_REQUIRE(plan);
  SF_REQUIRE(valid);
  return guarded([&] {
    std::string reason;
    *valid = validate_plan(task->task, parse_plan(plan), &reason) ? 1 : 0;
    if (why) *why = dup(*valid ? "" : reason);
  });
}

sf_status sf_task_describe(const sf_task* task, char** out) {
  SF_REQUIRE(task);
  SF_REQUIRE(out);
  return guarded([&] {
    const PlanningTask& t = task->task;
    json j = describe_domain(pddl::domain_of(t));
    json ents = json::object();
    for (const auto& [e, ts] : t.entities) ents[e] = ts;
    j["entities"] = ents;
    json init = json::array();
    for (const auto& a : t.init) init.push_back(to_string(a));
    j["init"] = init;
    json goal = json::array();
    for (const auto& l : t.goal) goal.push_back(literal_json(l));
    j["goal"] = goal;
    *out = dup(j.dump(2));
  });
}

sf_status sf_domain_canonical(const char* domain_text, char** out) {
  SF_REQUIRE(domain_text);
  SF_REQUIRE(out);
  return guarded([&] { *out = dup(pddl::serialize_domain(pddl::parse_domain(domain_text))); });
}

sf_status sf_domain_describe(const char* domain_text, char** out) {
  SF_REQUIRE(domain_text);
  SF_REQUIRE(out);
  return guarded([&] { *out = dup(describe_domain(pddl::parse_domain(domain_text)).dump(2)); });
}

sf_status sf_world_load(const char* scene_path, sf_world** out) {
  SF_REQUIRE(scene_path);
  SF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto w = std::make_unique<sf_world>();
    w->world = std::make_unique<World>(SceneSpec::load(scene_path));
    w->task = basic_domain();
    refresh_entities(*w);
    *out = w.release();
  });
}

void sf_world_free(sf_world* world) { delete world; }

sf_status sf_world_predicates(const sf_world* world, char** text) {
  SF_REQUIRE(world);
  SF_REQUIRE(text);
  return guarded([&] { *text = dup(predicates_text(*world->world, world->task)); });
}

sf_status sf_world_step(sf_world* world, const char* call, const double* displacement,
                        const char* orientation, int* ok) {
  SF_REQUIRE(world);
  SF_REQUIRE(call);
  SF_REQUIRE(ok);
  return guarded([&] {
    auto steps = parse_plan(call);
    if (steps.size() != 1) throw Error(ErrorCode::kSyntax, "expected exactly one skill call");
    PlanStep step = steps.front();
    if (displacement) step.extra.displacement = Vec3{displacement[0], displacement[1], displacement[2]};
    if (orientation) step.extra.orientation = orientation_from(orientation);
    if (!world->task.actions.count(step.action) || world->task.actions.at(step.action).is_meta()) {
      throw Error(ErrorCode::kUsage, "not a basic skill: " + step.action);
    }
    *ok = execute_basic(*world->world, world->task, step) ? 1 : 0;
  });
}

sf_status sf_world_run_script(sf_world* world, const char* script_path, char** report,
                              int* failures) {
  SF_REQUIRE(world);
  SF_REQUIRE(script_path);
  SF_REQUIRE(report);
  return guarded([&] {
    Script script = load_script(script_path);
    for (const auto& [name, p] : script.positions) world->world->set_position(name, p);
    refresh_entities(*world);
    std::string out;
    int failed = 0;
    int k = 0;
    for (PlanStep step : script.steps) {
      ++k;
      if (!world->task.actions.count(step.action) ||
          world->task.actions.at(step.action).is_meta()) {
        throw Error(ErrorCode::kUsage, "not a basic skill: " + step.action);
      }
      bool ok = execute_basic(*world->world, world->task, step);
      failed += ok ? 0 : 1;
      out += "# " + std::to_string(k) + " " + to_string(step) + (ok ? " ok\n" : " failed\n");
      out += predicates_text(*world->world, world->task);
    }
    if (failures) *failures = failed;
    *report = dup(out);
  });
}

void sf_explore_options_init(sf_explore_options* o) {
  if (!o) return;
  *o = sf_explore_options{};
  o->strategy = "full-length";
  o->max_len = 4;
  o->iterations = 5000;
  o->max_sim_steps = -1;
  o->seed = 0;
  o->all_skills = 0;
}

sf_status sf_explore(const sf_explore_options* o, sf_explore_run** out) {
  SF_REQUIRE(o);
  SF_REQUIRE(o->scene_path);
  SF_REQUIRE(o->goal_path);
  SF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    ExplorationConfig c;
    c.l_max = o->max_len;
    c.max_iterations = o->iterations;
    c.max_sim_steps = o->max_sim_steps;
    c.rng_seed = o->seed;
    c.strategy = length_strategy_from_string(o->strategy ? o->strategy : "full-length");
    if (o->all_skills) c.key_skill_pool = {"navigate", "grasp", "place", "move"};
    c.validate();

    ExplorationInput in{SceneSpec::load(o->scene_path), load_goal(o->goal_path), std::nullopt,
                        std::nullopt};
    if (o->demo_path) in.demo = load_demo(o->demo_path);
    if (o->prior_path) in.prior = pddl::parse_domain(read_file(o->prior_path));

    auto run = std::make_unique<sf_explore_run>();
    json cfg{{"event", "config"},
             {"scene", o->scene_path},
             {"goal", o->goal_path},
             {"demo", o->demo_path ? json(o->demo_path) : json(nullptr)},
             {"prior", o->prior_path ? json(o->prior_path) : json(nullptr)},
             {"strategy", to_string(c.strategy)},
             {"max_len", c.l_max},
             {"iterations", c.max_iterations},
             {"max_sim_steps", c.max_sim_steps},
             {"seed", c.rng_seed},
             {"key_skill_pool", c.key_skill_pool},
             {"r_rel", c.r_rel},
             {"position_samples_per_slot", c.position_samples_per_slot},
             {"planner_node_budget", c.planner.node_budget}};
    run->log = cfg.dump() + "\n";

    run->result = explore(in, c);
    const ExplorationResult& r = run->result;
    for (const auto& n : r.notes) run->log += json{{"event", "note"}, {"text", n}}.dump() + "\n";
    json cands = json::array();
    for (const auto& pc : r.candidates) {
      cands.push_back({{"literal", to_string(pc.literal)}, {"step", pc.step}});
    }
    json seq = json::array();
    for (const auto& s : r.sequence) seq.push_back(to_string(s));
    json res{{"event", "result"},
             {"found", r.found},
             {"iterations", r.iterations},
             {"sim_steps", r.sim_steps},
             {"solution_len", r.flat.size()},
             {"key_len", r.key_steps},
             {"sequence", seq},
             {"candidates", cands},
             {"sampling_failures", r.sampling_failures},
             {"completion_failures", r.completion_failures},
             {"execution_failures", r.execution_failures},
             {"elapsed_ms", r.elapsed_ms},
             {"sim_ms", r.sim_ms}};
    run->log += res.dump() + "\n";
    *out = run.release();
  });
}

void sf_explore_free(sf_explore_run* run) { delete run; }

int sf_explore_found(const sf_explore_run* run) { return run && run->result.found ? 1 : 0; }

int64_t sf_explore_iterations(const sf_explore_run* run) {
  return run ? run->result.iterations : 0;
}

uint64_t sf_explore_sim_steps(const sf_explore_run* run) {
  return run ? run->result.sim_steps : 0;
}

sf_status sf_explore_sequence(const sf_explore_run* run, char** text) {
  SF_REQUIRE(run);
  SF_REQUIRE(text);
  return guarded([&] { *text = dup(plan_text(run->result.sequence)); });
}

sf_status sf_explore_domain(const sf_explore_run* run, char** text) {
  SF_REQUIRE(run);
  SF_REQUIRE(text);
  return guarded([&] {
    if (run->result.extended.actions.empty()) {
      throw Error(ErrorCode::kUsage, "the run produced no domain");
    }
    *text = dup(pddl::serialize_domain(pddl::domain_of(run->result.extended)));
  });
}

sf_status sf_explore_log(const sf_explore_run* run, char** text) {
  SF_REQUIRE(run);
  SF_REQUIRE(text);
  return guarded([&] { *text = dup(run->log); });
}

void sf_bench_options_init(sf_bench_options* o) {
  if (!o) return;
  BenchConfig d;
  *o = sf_bench_options{};
  o->runs = 20;
  o->seed_base = 0;
  o->exploration_iterations = d.exploration_iterations;
  o->mcts_iterations = d.mcts_iterations;
  o->max_sim_steps = d.max_sim_steps;
  o->alpha = d.alpha;
  o->depth = d.depth;
  o->max_len = d.l_max;
}

sf_status sf_bench_run(const sf_bench_options* o, sf_bench_callback callback, void* user,
                       sf_bench** out) {
  SF_REQUIRE(o);
  SF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> scenarios;
    for (size_t i = 0; i < o->scenario_count; ++i) scenarios.emplace_back(o->scenarios[i]);
    if (scenarios.empty()) {
      for (const auto& s : scenario_specs()) scenarios.push_back(s.id);
    }
    std::vector<Method> methods;
    for (size_t i = 0; i < o->method_count; ++i) methods.push_back(method_from_string(o->methods[i]));
    if (methods.empty()) methods = all_methods();
    BenchConfig c;
    c.exploration_iterations = o->exploration_iterations;
    c.mcts_iterations = o->mcts_iterations;
    c.max_sim_steps = o->max_sim_steps;
    c.alpha = o->alpha;
    c.depth = o->depth;
    c.l_max = o->max_len;
    if (c.alpha < 0.0 || c.alpha > 1.0) throw Error(ErrorCode::kUsage, "alpha must be in [0,1]");
    auto b = std::make_unique<sf_bench>();
    b->records = run_matrix(scenarios, methods, o->runs, o->seed_base, c,
                            [&](const RunRecord& r) {
                              if (callback) callback(to_csv_row(r).c_str(), user);
                            });
    *out = b.release();
  });
}

void sf_bench_free(sf_bench* bench) { delete bench; }

size_t sf_bench_record_count(const sf_bench* bench) { return bench ? bench->records.size() : 0; }

sf_status sf_bench_csv(const sf_bench* bench, char** csv) {
  SF_REQUIRE(bench);
  SF_REQUIRE(csv);
  return guarded([&] { *csv = dup(to_csv(bench->records)); });
}

sf_status sf_bench_summary(const sf_bench* bench, char** text) {
  SF_REQUIRE(bench);
  SF_REQUIRE(text);
  return guarded([&] {
    if (bench->records.empty()) throw Error(ErrorCode::kUsage, "no records");
    *text = dup(format_summary(summarize(bench->records)));
  });
}

sf_status sf_bench_summarize_csv(const char* csv, char** text) {
  SF_REQUIRE(csv);
  SF_REQUIRE(text);
  return guarded([&] {
    auto records = parse_csv(csv);
    if (records.empty()) throw Error(ErrorCode::kUsage, "no records");
    *text = dup(format_summary(summarize(records)));
  });
}

sf_status sf_scenarios(char** out) {
  SF_REQUIRE(out);
  return guarded([&] {
    json arr = json::array();
    for (const auto& s : scenario_specs()) {
      arr.push_back({{"id", s.id},
                     {"scene", s.scene},
                     {"goal", s.goal},
                     {"demo", s.demo},
                     {"prior", s.prior},
                     {"reference_length", s.reference_length},
                     {"reference_keys", s.reference_keys},
                     {"l_max", s.l_max},
                     {"mcts_depth", s.mcts_depth}});
    }
    *out = dup(arr.dump(2));
  });
}

sf_status sf_scenario_task(const char* id, char** domain_text, char** problem_text) {
  SF_REQUIRE(id);
  return guarded([&] {
    Scenario sc = load_scenario(id);
    if (domain_text) *domain_text = dup(pddl::serialize_domain(sc.task));
    if (problem_text) *problem_text = dup(pddl::serialize_problem(sc.task));
  });
}

sf_status sf_data_path(const char* relative, char** path) {
  SF_REQUIRE(relative);
  SF_REQUIRE(path);
  return guarded([&] { *path = dup(data_path(relative)); });
}

}  // extern "C"
