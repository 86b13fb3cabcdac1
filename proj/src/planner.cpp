#include "planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace skillforge {

std::string to_string(const PlanStep& step) {
  std::string s = "(" + step.action;
  for (const auto& a : step.args) s += " " + a;
  return s + ")";
}

std::vector<PlanStep> parse_plan(const std::string& text) {
  std::vector<PlanStep> plan;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    std::string body;
    for (char ch : line) body += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = body.find_last_not_of(" \t\r");
    if (body[first] != '(' || body[last] != ')') {
      throw Error(ErrorCode::kSyntax, "plan line " + std::to_string(lineno) + ": expected (action args)");
    }
    std::istringstream words(body.substr(first + 1, last - first - 1));
    PlanStep step;
    if (!(words >> step.action)) {
      throw Error(ErrorCode::kSyntax, "plan line " + std::to_string(lineno) + ": empty step");
    }
    for (std::string w; words >> w;) step.args.push_back(w);
    plan.push_back(std::move(step));
  }
  return plan;
}

namespace {

// Checks literals whose terms are all bound: equality, and static predicates
// (never changed by any action) against the initial state.
bool partial_ok(const std::vector<ParamLiteral>& pre, const Binding& b,
                const std::set<std::string>& static_preds, const SymbolicState& init) {
  for (const auto& l : pre) {
    bool bound = std::all_of(l.terms.begin(), l.terms.end(),
                             [&](const std::string& t) { return !is_variable(t) || b.count(t); });
    if (!bound) continue;
    if (l.predicate == "=") {
      if (!ground_equality(l, b)) return false;
    } else if (static_preds.count(l.predicate)) {
      if (!holds(init, ground(l, b))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<GroundAction> ground_actions(const PlanningTask& task, bool prune_static) {
  std::set<std::string> static_preds;
  if (prune_static) {
    for (const auto& [name, _] : task.predicates) static_preds.insert(name);
  }
  for (const auto& [_, a] : task.actions) {
    for (const auto& e : a.eff) static_preds.erase(e.predicate);
  }

  std::vector<GroundAction> out;
  for (const auto& [name, action] : task.actions) {
    std::vector<std::vector<std::string>> candidates;
    for (const auto& p : action.params) {
      std::vector<std::string> c;
      for (const auto& [entity, _] : task.entities) {
        if (task.entity_has_type(entity, p.type)) c.push_back(entity);
      }
      candidates.push_back(std::move(c));
    }
    Binding b;
    std::vector<std::string> args(action.params.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == action.params.size()) {
        GroundAction g;
        g.action = name;
        g.args = args;
        g.pre = ground_preconditions(action, b);
        g.eff = ground_effects(action, b);
        out.push_back(std::move(g));
        return;
      }
      for (const auto& e : candidates[i]) {
        b[action.params[i].name] = e;
        args[i] = e;
        if (partial_ok(action.pre, b, static_preds, task.init)) self(self, i + 1);
      }
      b.erase(action.params[i].name);
    };
    rec(rec, 0);
  }
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct CompiledAction {
  std::vector<int> pre_pos, pre_neg, add, del;
};

class Indexer {
 public:
  int id(const Atom& a) {
    auto [it, inserted] = ids_.emplace(a, static_cast<int>(ids_.size()));
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

 private:
  std::map<Atom, int> ids_;
};

bool test(const Bits& s, int i) { return (s[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& s, int i) { s[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
void clear_bit(Bits& s, int i) { s[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

}  // namespace

PlanOutcome solve(const PlanningTask& task, const PlannerOptions& options) {
  PlanOutcome outcome;
  if (satisfies(task.init, task.goal)) {
    outcome.status = PlanStatus::kSolved;
    return outcome;
  }
  std::vector<GroundAction> ground = ground_actions(task, true);

  // Relaxed reachability: drop actions whose positive preconditions can never
  // hold, and detect goals that can never be reached.
  std::set<Atom> reach(task.init.begin(), task.init.end());
  std::vector<char> usable(ground.size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (usable[i]) continue;
      bool ok = std::all_of(ground[i].pre.begin(), ground[i].pre.end(), [&](const Literal& l) {
        return !l.positive || reach.count(l.atom);
      });
      if (!ok) continue;
      usable[i] = 1;
      changed = true;
      for (const auto& e : ground[i].eff) {
        if (e.positive) reach.insert(e.atom);
      }
    }
  }
  std::set<Atom> deletable;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!usable[i]) continue;
    for (const auto& e : ground[i].eff) {
      if (!e.positive) deletable.insert(e.atom);
    }
  }
  for (const auto& g : task.goal) {
    bool possible = g.positive ? reach.count(g.atom) > 0
                               : (!task.init.count(g.atom) || deletable.count(g.atom));
    if (!possible) return outcome;
  }

  Indexer index;
  for (const auto& a : task.init) index.id(a);
  for (const auto& g : task.goal) index.id(g.atom);
  std::vector<CompiledAction> actions;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!usable[i]) continue;
    CompiledAction c;
    for (const auto& l : ground[i].pre) (l.positive ? c.pre_pos : c.pre_neg).push_back(index.id(l.atom));
    for (const auto& l : ground[i].eff) (l.positive ? c.add : c.del).push_back(index.id(l.atom));
    actions.push_back(std::move(c));
    origin.push_back(i);
  }
  const std::size_t words = (index.size() + 63) / 64;
  std::vector<std::pair<int, bool>> goal;
  for (const auto& g : task.goal) goal.emplace_back(index.id(g.atom), g.positive);

  auto unsatisfied = [&](const Bits& s) {
    int h = 0;
    for (auto [id, pos] : goal) h += test(s, id) != pos;
    return h;
  };

  struct Node {
    Bits state;
    int parent;
    int via;
  };
  std::vector<Node> nodes;
  std::unordered_map<Bits, int, BitsHash> seen;
  Bits start(words, 0);
  for (const auto& a : task.init) set_bit(start, index.id(a));
  nodes.push_back({start, -1, -1});
  seen.emplace(start, 0);

  // Key: (heuristic, insertion order) in greedy mode, insertion order in BFS.
  using Entry = std::pair<long long, long long>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  long long counter = 0;
  open.push({options.optimal ? 0 : unsatisfied(start), counter++});
  std::vector<int> order{0};

  while (!open.empty()) {
    if (outcome.expanded >= options.node_budget) {
      outcome.status = PlanStatus::kBudgetExhausted;
      return outcome;
    }
    int current = order[open.top().second];
    open.pop();
    ++outcome.expanded;
    for (std::size_t k = 0; k < actions.size(); ++k) {
      const auto& a = actions[k];
      const Bits& s = nodes[current].state;
      bool ok = std::all_of(a.pre_pos.begin(), a.pre_pos.end(), [&](int i) { return test(s, i); }) &&
                std::none_of(a.pre_neg.begin(), a.pre_neg.end(), [&](int i) { return test(s, i); });
      if (!ok) continue;
      Bits next = s;
      for (int i : a.del) clear_bit(next, i);
      for (int i : a.add) set_bit(next, i);
      if (seen.count(next)) continue;
      int id = static_cast<int>(nodes.size());
      nodes.push_back({next, current, static_cast<int>(k)});
      seen.emplace(nodes.back().state, id);
      int h = unsatisfied(nodes.back().state);
      if (h == 0) {
        std::vector<PlanStep> plan;
        for (int n = id; nodes[n].parent >= 0; n = nodes[n].parent) {
          const auto& g = ground[origin[nodes[n].via]];
          plan.push_back({g.action, g.args, {}});
        }
        std::reverse(plan.begin(), plan.end());
        outcome.status = PlanStatus::kSolved;
        outcome.plan = std::move(plan);
        return outcome;
      }
      order.push_back(id);
      open.push({options.optimal ? 0 : h, counter++});
    }
  }
  outcome.status = PlanStatus::kUnsolvable;
  return outcome;
}

SymbolicState progress(const PlanningTask& task, SymbolicState state,
                       const std::vector<PlanStep>& steps) {
  for (const auto& step : steps) {
    const auto& a = task.actions.at(step.action);
    state = apply_effects(state, a, make_binding(a, step.args));
  }
  return state;
}

bool validate_plan(const PlanningTask& task, const std::vector<PlanStep>& plan, std::string* why) {
  SymbolicState state = task.init;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    auto it = task.actions.find(plan[i].action);
    if (it == task.actions.end()) {
      if (why) *why = "step " + std::to_string(i) + ": unknown action " + plan[i].action;
      return false;
    }
    if (it->second.params.size() != plan[i].args.size()) {
      if (why) *why = "step " + std::to_string(i) + ": arity mismatch";
      return false;
    }
    Binding b = make_binding(it->second, plan[i].args);
    if (!binding_type_valid(task, it->second, b)) {
      if (why) *why = "step " + std::to_string(i) + ": ill-typed binding " + to_string(plan[i]);
      return false;
    }
    if (!preconditions_met(state, it->second, b)) {
      if (why) *why = "step " + std::to_string(i) + ": preconditions unmet for " + to_string(plan[i]);
      return false;
    }
    state = apply_effects(state, it->second, b);
  }
  if (!satisfies(state, task.goal)) {
    if (why) *why = "goal not satisfied at the end of the plan";
    return false;
  }
  return true;
}

PlanningTask relax_goal_entity_types(const PlanningTask& task,
                                     const std::vector<std::string>& goal_entities) {
  PlanningTask out = task;
  const auto all = task.types.names();
  for (const auto& e : goal_entities) {
    auto it = out.entities.find(e);
    if (it != out.entities.end()) it->second = all;
  }
  return out;
}

std::vector<std::string> goal_entities(const std::vector<Literal>& goal) {
  std::set<std::string> s;
  for (const auto& l : goal) s.insert(l.atom.args.begin(), l.atom.args.end());
  return {s.begin(), s.end()};
}

}  // namespace skillforge
