#include "exploration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "extension.hpp"
#include "generalization.hpp"

namespace skillforge {

LengthStrategy length_strategy_from_string(const std::string& s) {
  if (s == "alternating") return LengthStrategy::kAlternating;
  if (s == "increasing") return LengthStrategy::kIncreasing;
  if (s == "full-length" || s == "full_length") return LengthStrategy::kFullLength;
  throw Error(ErrorCode::kUsage, "unknown strategy '" + s + "'");
}

const char* to_string(LengthStrategy s) {
  switch (s) {
    case LengthStrategy::kAlternating: return "alternating";
    case LengthStrategy::kIncreasing: return "increasing";
    case LengthStrategy::kFullLength: return "full-length";
  }
  return "?";
}

void ExplorationConfig::validate() const {
  if (l_max < 1) throw Error(ErrorCode::kUsage, "l_max must be at least 1");
  if (max_iterations < 0 && time_budget_s <= 0 && max_sim_steps < 0) {
    throw Error(ErrorCode::kUsage, "an iteration or time budget is required");
  }
  if (key_skill_pool.empty()) throw Error(ErrorCode::kUsage, "empty key skill pool");
  if (r_rel < 0) throw Error(ErrorCode::kUsage, "r_rel must be non-negative");
  if (position_samples_per_slot < 1) {
    throw Error(ErrorCode::kUsage, "position_samples_per_slot must be at least 1");
  }
}

std::size_t uniform_index(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double uniform_real(Rng& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int get_sequence_length(LengthStrategy strategy, int l_max, std::int64_t n, double elapsed_s,
                        double t_max_s, std::int64_t max_iterations) {
  switch (strategy) {
    case LengthStrategy::kAlternating:
      return 1 + static_cast<int>(n % l_max);
    case LengthStrategy::kIncreasing: {
      double phase = 0.0;
      if (t_max_s > 0) {
        phase = elapsed_s / (t_max_s / l_max);
      } else if (max_iterations > 0) {
        phase = static_cast<double>(n) / (static_cast<double>(max_iterations) / l_max);
      }
      return std::min<int>(l_max, 1 + static_cast<int>(std::floor(phase)));
    }
    case LengthStrategy::kFullLength:
      return l_max;
  }
  return l_max;
}

std::set<std::string> find_relevant_objects(const std::vector<Literal>& goal, const World& world,
                                            double r_rel) {
  std::set<std::string> out{world.scene().robot};
  std::vector<std::string> physical_goal;
  for (const auto& e : goal_entities(goal)) {
    out.insert(e);
    if (world.is_physical(e)) physical_goal.push_back(e);
  }
  if (r_rel <= 0.0) return out;  // touching entities are not neighbours at radius 0
  for (const auto& e : world.physical_entities()) {
    Box b = world.bounding_box(e);
    for (const auto& g : physical_goal) {
      if (box_distance(b, world.bounding_box(g)) <= r_rel + kEps) {
        out.insert(e);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> sample_sequence(int l, const std::vector<std::string>& pool, Rng& rng,
                                         const std::optional<std::string>& pinned) {
  std::vector<std::string> out;
  const int drawn = pinned ? l - 1 : l;
  for (int i = 0; i < drawn; ++i) out.push_back(pool[uniform_index(rng, pool.size())]);
  if (pinned) out.push_back(*pinned);
  return out;
}

namespace {

constexpr double kSampleInflateXY = 0.05;
constexpr double kSampleInflateUp = 0.25;

bool is_static(EntityClass c) { return c != EntityClass::kItem && c != EntityClass::kLid; }

bool free_of_static_geometry(const World& world, const Box& b) {
  for (const auto& e : world.physical_entities()) {
    if (!is_static(world.spec(e).cls)) continue;
    for (const auto& s : world.solid_boxes(e)) {
      if (overlaps(s, b)) return false;
    }
  }
  return true;
}

}  // namespace

Vec3 sample_position(const World& world, const std::set<std::string>& around, Rng& rng,
                     int attempts, const Vec3& object_size) {
  std::vector<Box> boxes;
  double total = 0.0;
  for (const auto& e : around) {
    if (!world.is_physical(e)) continue;
    boxes.push_back(world.bounding_box(e).inflated(kSampleInflateXY, kSampleInflateUp));
    total += boxes.back().volume();
  }
  if (boxes.empty()) {
    const auto& s = world.scene();
    boxes.push_back({{0, 0, 0}, {s.arena_x, s.arena_y, 1.0}});
    total = boxes.back().volume();
  }
  // Uniform over the union: volume-weighted box choice, then acceptance with
  // probability 1/multiplicity.
  auto draw = [&] {
    for (;;) {
      double pick = uniform_real(rng, 0.0, total);
      std::size_t i = 0;
      while (i + 1 < boxes.size() && pick >= boxes[i].volume()) pick -= boxes[i++].volume();
      const Box& b = boxes[i];
      Vec3 p{uniform_real(rng, b.lo.x, b.hi.x), uniform_real(rng, b.lo.y, b.hi.y),
             uniform_real(rng, b.lo.z, b.hi.z)};
      int mult = 0;
      for (const auto& o : boxes) mult += contains_point(o, p) ? 1 : 0;
      if (mult <= 1 || uniform_real(rng, 0.0, 1.0) < 1.0 / mult) return p;
    }
  };
  Vec3 p;
  for (int k = 0; k < attempts; ++k) {
    p = draw();
    if (free_of_static_geometry(world, Box::centered(p, object_size))) break;
  }
  return p;
}

namespace {

// The object placed at a position slot and the orientation it is placed
// with, if the action (or its expansion) places something there.
std::optional<std::pair<std::string, std::optional<Orientation>>> placed_at(
    const PlanningTask& task, const ActionSchema& a, const std::string& slot) {
  if (!a.is_meta()) {
    if (task.actions.at(a.name).skill == "place" && a.params.size() >= 3 &&
        a.params.back().name == slot) {
      return std::make_pair(a.params[a.params.size() - 2].name, std::optional<Orientation>{});
    }
    return std::nullopt;
  }
  for (const auto& e : a.expansion) {
    if (task.actions.at(e.action).skill == "place" && e.args.size() >= 3 && e.args.back() == slot) {
      return std::make_pair(e.args[e.args.size() - 2], e.extra.orientation);
    }
  }
  return std::nullopt;
}

}  // namespace

SampledKeys sample_parameters(const std::vector<KeyAction>& partial, const PlanningTask& task,
                              const std::set<std::string>& relevant, const World& world, Rng& rng,
                              int& sample_counter, int position_attempts) {
  SampledKeys out;
  for (const auto& key : partial) {
    auto it = task.actions.find(key.action);
    if (it == task.actions.end()) throw Error(ErrorCode::kInvalidTask, "unknown action " + key.action);
    const ActionSchema& a = it->second;
    const auto open = context_params(a);
    KeyAction k = key;

    if (!a.is_meta() && a.skill == "move" && !k.extra.displacement) {
      double x = uniform_real(rng, -0.5, 0.5), y = uniform_real(rng, -0.5, 0.5);
      k.extra.displacement = Vec3{x, y, uniform_real(rng, 0.0, 0.3)};
    }

    for (const auto& p : a.params) {
      if (k.binding.count(p.name)) continue;
      if (std::find(open.begin(), open.end(), p.name) != open.end()) continue;
      if (task.types.is_subtype(p.type, "position")) continue;  // after the entity slots
      std::vector<std::string> compatible;
      for (const auto& e : relevant) {
        if (task.entities.count(e) && task.entity_has_type(e, p.type)) compatible.push_back(e);
      }
      if (compatible.empty()) {
        throw Error(ErrorCode::kNoCompatibleEntity, "no entity for " + a.name + " " + p.name);
      }
      k.binding[p.name] = compatible[uniform_index(rng, compatible.size())];
    }

    if (!a.is_meta() && a.skill == "place" && !k.extra.orientation && a.params.size() >= 3) {
      const auto& obj = k.binding.at(a.params[a.params.size() - 2].name);
      bool lid = world.is_physical(obj) && world.spec(obj).cls == EntityClass::kLid;
      k.extra.orientation = lid || uniform_index(rng, 2) == 0 ? Orientation::kUpright
                                                               : Orientation::kLying;
    }

    for (const auto& p : a.params) {
      if (k.binding.count(p.name) || !task.types.is_subtype(p.type, "position")) continue;
      Vec3 size{0.06, 0.06, 0.06};
      if (auto placed = placed_at(task, a, p.name)) {
        auto ob = k.binding.find(placed->first);
        if (ob != k.binding.end() && world.is_physical(ob->second)) {
          auto o = placed->second ? placed->second : k.extra.orientation;
          size = oriented_extent(world.spec(ob->second).size, o.value_or(Orientation::kUpright));
        }
      }
      const std::string name = "pos-" + std::to_string(sample_counter++);
      out.positions[name] = sample_position(world, relevant, rng, position_attempts, size);
      k.binding[p.name] = name;
    }
    out.keys.push_back(std::move(k));
  }
  return out;
}

std::vector<PlanStep> sequence_refinement(World& world, const WorldState& initial,
                                          const PlanningTask& task, std::vector<PlanStep> seq,
                                          const std::vector<Literal>& goal,
                                          std::vector<bool>* tags) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t i = 0;
    while (i < seq.size()) {
      auto trial = seq;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      world.restore(initial);
      if (execute(world, task, trial, goal, true).success) {
        seq = std::move(trial);
        if (tags) tags->erase(tags->begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  return seq;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

bool has_meta(const PlanningTask& t) {
  return std::any_of(t.actions.begin(), t.actions.end(),
                     [](const auto& kv) { return kv.second.is_meta(); });
}

// `base` plus every entity of `from` that the sequence mentions and `base`
// lacks (fresh position samples), with types and coordinates.
PlanningTask with_used_entities(const PlanningTask& base, const PlanningTask& from,
                                const std::vector<PlanStep>& seq) {
  PlanningTask out = base;
  for (const auto& s : seq) {
    for (const auto& a : s.args) {
      if (out.entities.count(a) || !from.entities.count(a)) continue;
      out.entities[a] = from.entities.at(a);
      auto loc = from.locations.find(a);
      if (loc != from.locations.end()) out.locations[a] = loc->second;
    }
  }
  return out;
}

}  // namespace

ExplorationResult explore(const ExplorationInput& input, const ExplorationConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  ExplorationResult result;
  double sim_ms = 0.0;

  World world(input.scene);
  PlanningTask domain = input.prior ? prior_domain(world, *input.prior) : basic_domain();
  const PlanningTask task = scene_task(world, domain, input.goal);
  const WorldState s0 = world.snapshot();
  const auto& goal = input.goal.literals;
  const auto vocabulary = input.goal.vocabulary();
  const auto relevant = find_relevant_objects(goal, world, config.r_rel);
  Rng rng(config.rng_seed);

  auto run = [&](const PlanningTask& t, const std::vector<PlanStep>& seq) {
    auto ts = Clock::now();
    world.restore(s0);
    Execution ex = execute(world, t, seq, goal, true);
    sim_ms += ms_since(ts);
    return ex;
  };
  auto finish = [&]() -> ExplorationResult {
    result.elapsed_ms = ms_since(t0);
    result.sim_ms = sim_ms;
    result.sim_steps = world.skill_calls();
    return result;
  };
  auto log = [&](std::string s) { result.notes.push_back(std::move(s)); };

  if (goal_holds(world, goal)) {
    result.found = true;
    result.extended = task;
    log("goal holds initially");
    return finish();
  }

  PlanningTask working = task;
  std::optional<GeneralizationCandidate> candidate;
  if (has_meta(task) && !input.demo) {
    PlanOutcome o = solve(task, config.planner);
    if (o.status == PlanStatus::kSolved) {
      Execution ex = run(task, o.plan);
      if (ex.success) {
        result.found = true;
        result.sequence.assign(o.plan.begin(), o.plan.begin() + (ex.goal_step + 1));
        result.flat = flatten(task, result.sequence);
        result.extended = task;
        log("prior plan reaches the goal");
        return finish();
      }
      log("prior plan fails in execution; exploring");
    } else {
      candidate = extract_candidate(task, config.planner);
      if (candidate) {
        // Tentatively give the goal entities the types the relaxed plan uses.
        for (const auto& [e, type] : candidate->supporting_types) working.entities[e].insert(type);
        working.normalize();
        log("generalization candidate " + to_string(candidate->step) + " pinned to the final slot");
      }
    }
  }
  bool pinned = candidate.has_value();
  const std::int64_t pin_limit =
      config.max_iterations >= 0 ? config.max_iterations / 2 : std::int64_t{-1};
  std::set<std::string> pin_region;
  if (candidate) {
    for (const auto& e : goal_entities(goal)) {
      if (world.is_physical(e)) pin_region.insert(e);
    }
  }

  int counter = 0;
  for (std::int64_t n = 0;; ++n) {
    if (config.max_iterations >= 0 && n >= config.max_iterations) break;
    const double elapsed_s = ms_since(t0) / 1000.0;
    if (config.time_budget_s > 0 && elapsed_s >= config.time_budget_s) break;
    if (config.max_sim_steps >= 0 &&
        world.skill_calls() >= static_cast<std::uint64_t>(config.max_sim_steps)) {
      break;
    }
    const bool pin_spent =
        pin_limit >= 0 ? n >= pin_limit
                       : config.max_sim_steps >= 0 &&
                             world.skill_calls() >= static_cast<std::uint64_t>(config.max_sim_steps / 2);
    if (pinned && pin_spent) {
      pinned = false;
      working = task;
      log("pinned exploration exhausted its share; continuing unpinned");
    }
    result.iterations = n + 1;

    std::vector<KeyAction> partial;
    if (input.demo) {
      partial = *input.demo;
    } else {
      // Under a skill-call budget alone, the increasing schedule follows the
      // calls spent.
      const bool by_calls = config.strategy == LengthStrategy::kIncreasing &&
                            config.max_iterations < 0 && config.max_sim_steps > 0;
      int l = get_sequence_length(
          config.strategy, config.l_max,
          by_calls ? static_cast<std::int64_t>(world.skill_calls()) : n, elapsed_s,
          config.time_budget_s, by_calls ? config.max_sim_steps : config.max_iterations);
      auto names = sample_sequence(l, config.key_skill_pool, rng,
                                   pinned ? std::optional<std::string>(candidate->action)
                                          : std::nullopt);
      for (const auto& name : names) partial.push_back({name, {}, {}});
    }

    SampledKeys sk;
    try {
      if (pinned) partial.pop_back();
      sk = sample_parameters(partial, working, relevant, world, rng, counter,
                             config.position_samples_per_slot);
      if (pinned) {
        const ActionSchema& a = working.actions.at(candidate->action);
        const auto open = context_params(a);
        Binding full = make_binding(a, candidate->step.args);
        KeyAction k{a.name, {}, candidate->step.extra};
        for (const auto& p : a.params) {
          if (std::find(open.begin(), open.end(), p.name) != open.end()) continue;
          if (working.types.is_subtype(p.type, "position")) continue;
          k.binding[p.name] = full.at(p.name);
        }
        auto pk = sample_parameters({k}, working, pin_region, world, rng, counter,
                                    config.position_samples_per_slot);
        sk.keys.push_back(pk.keys.front());
        sk.positions.insert(pk.positions.begin(), pk.positions.end());
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoCompatibleEntity) throw;
      ++result.sampling_failures;
      continue;
    }

    PlanningTask it_task = working;
    for (const auto& [name, p] : sk.positions) {
      it_task.entities[name].insert("position");
      it_task.locations[name] = p;
      world.set_position(name, p);
    }
    // Samples in typed slots carry the slot's type.
    for (const auto& k : sk.keys) {
      const ActionSchema& a = it_task.actions.at(k.action);
      for (const auto& p : a.params) {
        auto b = k.binding.find(p.name);
        if (b != k.binding.end() && sk.positions.count(b->second)) {
          it_task.entities[b->second] = {p.type};
        }
      }
    }

    CompletedSequence completed;
    try {
      completed = sequence_completion(it_task, sk.keys, config.planner);
    } catch (const CompletionFailure&) {
      ++result.completion_failures;
      continue;
    }
    Execution ex = run(it_task, completed.steps);
    if (!ex.success) {
      ++result.execution_failures;
      continue;
    }

    // Truncate at the first goal-satisfying step, then refine.
    std::vector<PlanStep> seq(completed.steps.begin(),
                              completed.steps.begin() + (ex.goal_step + 1));
    std::vector<bool> tags(seq.size(), false);
    for (int ki : completed.key_indices) {
      if (ki < static_cast<int>(tags.size())) tags[ki] = true;
    }
    auto ts = Clock::now();
    seq = sequence_refinement(world, s0, it_task, seq, goal, &tags);
    world.restore(s0);
    Execution fin = execute(world, it_task, seq, goal, false);
    for (std::size_t i = 0; i < fin.executed.size(); ++i) {
      const auto& st = seq[fin.owner[i]];
      if (!it_task.actions.at(st.action).is_meta()) seq[fin.owner[i]] = fin.executed[i];
    }
    sim_ms += ms_since(ts);

    PlanningTask base = with_used_entities(task, it_task, seq);
    PlanningTask extended;
    std::vector<PredicateChange> found_candidates;
    try {
      auto full_extension = [&](const PlanningTask& t) {
        auto td = Clock::now();
        DiscoveryResult d = discover(world, s0, t, seq, relevant, vocabulary, goal);
        sim_ms += ms_since(td);
        found_candidates = d.candidates;
        return extend_symbolic_description(t, d, d.candidates, config.planner);
      };
      if (pinned) {
        try {
          PlanningTask adopted = adopt_types(base, *candidate, seq);
          if (solve(adopted, config.planner).status == PlanStatus::kSolved) {
            extended = adopted;
            log("candidate types adopted");
          } else {
            extended = full_extension(adopted);
            log("candidate types adopted; extension added meta-actions");
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kCandidateDropped) throw;
          log("candidate dropped by refinement; full extension");
          extended = full_extension(base);
        }
      } else {
        extended = full_extension(base);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kExtensionInvalid) throw;
      log(std::string("extension rejected: ") + e.what());
      continue;
    }

    result.found = true;
    result.sequence = seq;
    result.flat = flatten(base, seq);
    result.key_steps = static_cast<int>(std::count(tags.begin(), tags.end(), true));
    result.candidates = found_candidates;
    result.extended = std::move(extended);
    return finish();
  }
  log("budget exhausted");
  return finish();
}

}  // namespace skillforge
