#ifndef SKILLFORGE_SKILLFORGE_H
#define SKILLFORGE_SKILLFORGE_H

/*
 * C interface of the skillforge library.
 *
 * Every fallible function returns an sf_status. On failure a description is
 * available from sf_last_error() until the next call on the same thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with sf_string_free(). Handles are released with their _free
 * function; passing NULL to any _free function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_SYNTAX = 1,
  SF_ERR_UNSUPPORTED_REQUIREMENT = 2,
  SF_ERR_UNDECLARED_TYPE = 3,
  SF_ERR_UNKNOWN_PREDICATE = 4,
  SF_ERR_UNKNOWN_ENTITY = 5,
  SF_ERR_ARITY_MISMATCH = 6,
  SF_ERR_UNBOUND_VARIABLE = 7,
  SF_ERR_DUPLICATE_TYPE = 8,
  SF_ERR_INVALID_TASK = 9,
  SF_ERR_COMPLETION_FAILURE = 10,
  SF_ERR_EXTENSION_INVALID = 11,
  SF_ERR_CANDIDATE_DROPPED = 12,
  SF_ERR_NO_COMPATIBLE_ENTITY = 13,
  SF_ERR_PRIOR_UNAVAILABLE = 14,
  SF_ERR_IO = 15,
  SF_ERR_USAGE = 16,
  SF_ERR_NULL_ARGUMENT = 100,
  SF_ERR_INTERNAL = 101
} sf_status;

typedef enum sf_plan_outcome {
  SF_PLAN_SOLVED = 0,
  SF_PLAN_UNSOLVABLE = 1,
  SF_PLAN_BUDGET = 2
} sf_plan_outcome;

SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);
SF_API const char* sf_last_error(void);
SF_API void sf_string_free(char* s);

/* ---- PDDL and planning ------------------------------------------------ */

typedef struct sf_task sf_task;

/* Parses a domain and a problem (PDDL text) into a task. */
SF_API sf_status sf_task_parse(const char* domain_text, const char* problem_text, sf_task** out);
SF_API void sf_task_free(sf_task* task);

/* Serializes the task back to domain and problem text (either out may be NULL). */
SF_API sf_status sf_task_serialize(const sf_task* task, char** domain_text, char** problem_text);

/* Plans with greedy best-first search, or breadth-first when optimal != 0.
 * node_budget 0 selects the default. On SF_PLAN_SOLVED *plan receives one
 * step per line, "(action arg ...)"; otherwise it receives an empty string. */
SF_API sf_status sf_task_plan(const sf_task* task, int optimal, uint64_t node_budget,
                              sf_plan_outcome* outcome, char** plan);

/* Checks a plan given one step per line. *valid is 1 or 0; *why receives the
 * first violation (empty when valid). why may be NULL. */
SF_API sf_status sf_task_validate(const sf_task* task, const char* plan, int* valid, char** why);

/* JSON description of the task: types, predicates, actions with their
 * kind, entities, initial state and goal. */
SF_API sf_status sf_task_describe(const sf_task* task, char** json);

/* Parses and re-serializes a domain (canonical form). */
SF_API sf_status sf_domain_canonical(const char* domain_text, char** out);

/* JSON description of a domain without a problem. */
SF_API sf_status sf_domain_describe(const char* domain_text, char** json);

/* ---- Simulation -------------------------------------------------------- */

typedef struct sf_world sf_world;

SF_API sf_status sf_world_load(const char* scene_path, sf_world** out);
SF_API void sf_world_free(sf_world* world);

/* Grounded predicates that hold in the current state, one per line. */
SF_API sf_status sf_world_predicates(const sf_world* world, char** text);

/* Executes one skill call given as "(action arg ...)". Optional continuous
 * arguments: displacement (3 doubles, may be NULL) and orientation
 * ("upright", "lying" or NULL). *ok receives 1 on success. */
SF_API sf_status sf_world_step(sf_world* world, const char* call, const double* displacement,
                               const char* orientation, int* ok);

/* Replays a script file. *report receives, per step, a header line
 * "# <k> (action args) ok|failed" followed by the grounded predicates.
 * *failures receives the number of failed steps (may be NULL). */
SF_API sf_status sf_world_run_script(sf_world* world, const char* script_path, char** report,
                                     int* failures);

/* ---- Exploration ------------------------------------------------------- */

typedef struct sf_explore_options {
  const char* scene_path;
  const char* goal_path;
  const char* demo_path;  /* NULL: none */
  const char* prior_path; /* NULL: none; a learned domain */
  const char* strategy;   /* "alternating", "increasing" or "full-length" */
  int max_len;
  int64_t iterations;     /* < 0: unlimited */
  int64_t max_sim_steps;  /* < 0: unlimited */
  uint64_t seed;
  int all_skills;         /* nonzero: key actions drawn from all basic skills */
} sf_explore_options;

/* Fills the defaults (full-length, max_len 4, 5000 iterations, seed 0). */
SF_API void sf_explore_options_init(sf_explore_options* options);

typedef struct sf_explore_run sf_explore_run;

SF_API sf_status sf_explore(const sf_explore_options* options, sf_explore_run** out);
SF_API void sf_explore_free(sf_explore_run* run);

SF_API int sf_explore_found(const sf_explore_run* run);
SF_API int64_t sf_explore_iterations(const sf_explore_run* run);
SF_API uint64_t sf_explore_sim_steps(const sf_explore_run* run);

/* The refined sequence, one step per line. */
SF_API sf_status sf_explore_sequence(const sf_explore_run* run, char** text);
/* The extended domain as PDDL. */
SF_API sf_status sf_explore_domain(const sf_explore_run* run, char** text);
/* Line-delimited JSON run log; the first line echoes the configuration. */
SF_API sf_status sf_explore_log(const sf_explore_run* run, char** text);

/* ---- Benchmark ---------------------------------------------------------- */

typedef struct sf_bench_options {
  const char* const* scenarios; /* scenario ids */
  size_t scenario_count;
  const char* const* methods;   /* OA, ONA, OFL, OFLA, OD, MCTS */
  size_t method_count;
  int runs;
  uint64_t seed_base;
  int64_t exploration_iterations;
  int64_t mcts_iterations;
  int64_t max_sim_steps;        /* < 0: unlimited */
  double alpha;
  int depth;                    /* < 0: scenario default */
  int max_len;                  /* < 0: scenario default */
} sf_bench_options;

SF_API void sf_bench_options_init(sf_bench_options* options);

/* Called with each CSV row (without newline) as runs complete. */
typedef void (*sf_bench_callback)(const char* csv_row, void* user);

typedef struct sf_bench sf_bench;

SF_API sf_status sf_bench_run(const sf_bench_options* options, sf_bench_callback callback,
                              void* user, sf_bench** out);
SF_API void sf_bench_free(sf_bench* bench);
SF_API size_t sf_bench_record_count(const sf_bench* bench);
SF_API sf_status sf_bench_csv(const sf_bench* bench, char** csv);
SF_API sf_status sf_bench_summary(const sf_bench* bench, char** text);

/* Summary of an existing CSV file's contents. */
SF_API sf_status sf_bench_summarize_csv(const char* csv, char** text);

/* ---- Scenarios ---------------------------------------------------------- */

/* JSON array of the registered scenarios. */
SF_API sf_status sf_scenarios(char** json);

/* Basic-domain task of a registered scenario (initial state from its scene). */
SF_API sf_status sf_scenario_task(const char* id, char** domain_text, char** problem_text);

/* Absolute path of a data file (scene, goal, demo) of the registry. */
SF_API sf_status sf_data_path(const char* relative, char** path);

#ifdef __cplusplus
}
#endif

#endif
