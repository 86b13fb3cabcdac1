#include "mcts.hpp"

#include <chrono>
#include <cmath>

namespace skillforge {

bool should_expand(std::uint64_t n, double alpha) {
  if (n == 0) return false;
  auto fl = [alpha](std::uint64_t x) {
    if (x == 0) return 0.0L;  // the first visit always expands, even for alpha = 0
    long double v = std::pow(static_cast<long double>(x), static_cast<long double>(alpha));
    return std::floor(v + 1e-12L);
  };
  return fl(n) > fl(n - 1);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

class Search {
 public:
  Search(const SceneSpec& scene, const GoalSpec& goal, const MctsConfig& config)
      : config_(config), world_(scene), rng_(config.rng_seed) {
    task_ = scene_task(world_, basic_domain(), goal);
    goal_ = goal.literals;
    relevant_ = find_relevant_objects(goal_, world_, config.r_rel);
    for (const auto& e : relevant_) {
      if (e == world_.scene().robot) continue;
      targets_.push_back(e);
      if (world_.is_physical(e)) {
        auto c = world_.spec(e).cls;
        if (c == EntityClass::kItem || c == EntityClass::kLid) movables_.push_back(e);
      }
    }
  }

  MctsResult run() {
    const auto t0 = Clock::now();
    MctsResult r;
    r.root = std::make_unique<MctsNode>();
    r.root->state = world_.snapshot();
    r.nodes = 1;
    if (goal_holds(world_, goal_)) {
      r.found = true;
      return finish(r, t0);
    }
    for (std::int64_t n = 0;; ++n) {
      if (config_.max_iterations >= 0 && n >= config_.max_iterations) break;
      if (config_.max_sim_steps >= 0 &&
          world_.skill_calls() >= static_cast<std::uint64_t>(config_.max_sim_steps)) {
        break;
      }
      r.iterations = n + 1;
      std::vector<MctsNode*> path{r.root.get()};
      std::vector<PlanStep> edges;
      double reward = 0.0;
      MctsNode* node = r.root.get();
      for (;;) {
        ++node->visits;
        if (node->depth >= config_.depth_limit) break;
        if (should_expand(node->visits, config_.alpha) || node->children.empty()) {
          if (MctsNode* child = expand(*node, r)) {
            edges.push_back(node->edges.back());
            path.push_back(child);
            child->visits = 1;
            reward = goal_holds(world_, goal_) ? 1.0 : 0.0;
            child->value = reward;
            break;
          }
          if (node->children.empty()) break;
        }
        std::size_t best = select(*node);
        edges.push_back(node->edges[best]);
        node = node->children[best].get();
        path.push_back(node);
      }
      for (std::size_t i = 0; i + 1 < path.size(); ++i) path[i]->value += reward;
      if (reward > 0.0) {
        r.found = true;
        r.path = edges;
        break;
      }
    }
    return finish(r, t0);
  }

 private:
  MctsResult finish(MctsResult& r, Clock::time_point t0) {
    r.elapsed_ms = ms_since(t0);
    r.sim_ms = sim_ms_;
    r.sim_steps = world_.skill_calls();
    r.positions = world_.positions();
    return std::move(r);
  }

  std::size_t select(const MctsNode& node) const {
    std::size_t best = 0;
    double best_score = -1.0;
    const double ln = std::log(static_cast<double>(node.visits));
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const auto& c = *node.children[i];
      double q = c.visits ? c.value / static_cast<double>(c.visits) : 0.0;
      double u = c.visits ? config_.exploration_constant *
                                std::sqrt(ln / static_cast<double>(c.visits))
                          : 1e9;
      if (q + u > best_score) {
        best_score = q + u;
        best = i;
      }
    }
    return best;
  }

  PlanStep sample_call(const WorldState& s) {
    static const char* kSkills[] = {"navigate", "grasp", "place", "move"};
    const std::string skill = kSkills[uniform_index(rng_, 4)];
    const std::string& robot = world_.scene().robot;
    PlanStep step{skill, {robot}, {}};
    if (skill == "navigate") {
      step.args.push_back(s.anchor);
      if (uniform_index(rng_, 2) == 0 || targets_.empty()) {
        Vec3 size{0.06, 0.06, 0.06};
        if (!s.held.empty()) size = world_.spec(s.held).size;
        const std::string name = "pos-" + std::to_string(counter_++);
        world_.set_position(name, sample_position(world_, relevant_, rng_,
                                                  config_.position_samples_per_slot, size));
        step.args.push_back(name);
      } else {
        step.args.push_back(targets_[uniform_index(rng_, targets_.size())]);
      }
    } else if (skill == "grasp") {
      step.args.push_back(movables_.empty() ? robot
                                            : movables_[uniform_index(rng_, movables_.size())]);
    } else if (skill == "place") {
      step.args.push_back(s.held.empty() ? robot : s.held);
      step.args.push_back(s.anchor);
      bool lid = !s.held.empty() && world_.spec(s.held).cls == EntityClass::kLid;
      step.extra.orientation =
          lid || uniform_index(rng_, 2) == 0 ? Orientation::kUpright : Orientation::kLying;
    } else {
      step.args.push_back(s.held.empty() ? robot : s.held);
      double x = uniform_real(rng_, -0.5, 0.5), y = uniform_real(rng_, -0.5, 0.5);
      step.extra.displacement = Vec3{x, y, uniform_real(rng_, 0.0, 0.3)};
    }
    return step;
  }

  MctsNode* expand(MctsNode& node, MctsResult& r) {
    for (int k = 0; k < config_.expansion_attempts; ++k) {
      if (config_.max_sim_steps >= 0 &&
          world_.skill_calls() >= static_cast<std::uint64_t>(config_.max_sim_steps)) {
        return nullptr;
      }
      PlanStep step = sample_call(node.state);
      world_.restore(node.state);
      auto ts = Clock::now();
      bool ok = execute_basic(world_, task_, step);
      sim_ms_ += ms_since(ts);
      if (!ok) continue;
      auto child = std::make_unique<MctsNode>();
      child->state = world_.snapshot();
      child->depth = node.depth + 1;
      node.expansion_visits.push_back(node.visits);
      node.edges.push_back(step);
      node.children.push_back(std::move(child));
      ++r.nodes;
      return node.children.back().get();
    }
    return nullptr;
  }

  MctsConfig config_;
  World world_;
  Rng rng_;
  PlanningTask task_;
  std::vector<Literal> goal_;
  std::set<std::string> relevant_;
  std::vector<std::string> targets_;
  std::vector<std::string> movables_;
  int counter_ = 0;
  double sim_ms_ = 0.0;
};

}  // namespace

MctsResult mcts_search(const SceneSpec& scene, const GoalSpec& goal, const MctsConfig& config) {
  if (config.alpha < 0.0 || config.alpha > 1.0) {
    throw Error(ErrorCode::kUsage, "alpha must be in [0,1]");
  }
  Search s(scene, goal, config);
  return s.run();
}

}  // namespace skillforge
