#include "support.hpp"

#include <deque>
#include <map>

namespace testsupport {

using namespace skillforge;

namespace {

bool reaches(const TypeHierarchy& h, const std::string& from, const std::string& to) {
  if (from == to) return true;
  std::set<std::string> seen{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string t = stack.back();
    stack.pop_back();
    auto it = h.edges().find(t);
    if (it == h.edges().end()) continue;
    for (const auto& p : it->second) {
      if (p == to) return true;
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  return false;
}

}  // namespace

bool oracle_has_type(const PlanningTask& task, const std::string& entity, const std::string& type) {
  auto it = task.entities.find(entity);
  if (it == task.entities.end()) return false;
  for (const auto& t : it->second) {
    if (reaches(task.types, t, type)) return true;
  }
  return false;
}

PlanningTask random_task(std::mt19937_64& rng, int max_entities) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  PlanningTask t;
  t.domain_name = "rand";
  t.problem_name = "rand";
  t.types.add("a", "object");
  t.types.add("b", "object");
  t.types.add("a1", "a");
  const std::vector<std::string> types{"a", "b", "a1", "object"};
  t.predicates["p"] = {"p", {{"?x", "object"}}};
  t.predicates["q"] = {"q", {{"?x", "a"}}};
  t.predicates["r"] = {"r", {{"?x", "object"}, {"?y", "object"}}};
  t.predicates["flag"] = {"flag", {}};

  const int n_ent = 2 + pick(max_entities - 1);
  std::vector<std::string> ents;
  for (int i = 0; i < n_ent; ++i) {
    std::string e = "e" + std::to_string(i);
    ents.push_back(e);
    t.entities[e] = {types[static_cast<std::size_t>(pick(3))]};
  }

  const int n_act = 2 + pick(3);
  for (int k = 0; k < n_act; ++k) {
    ActionSchema a;
    a.name = "act" + std::to_string(k);
    a.skill = a.name;
    const int n_par = 1 + pick(2);
    std::vector<std::string> vars;
    for (int i = 0; i < n_par; ++i) {
      std::string v = "?x" + std::to_string(i);
      vars.push_back(v);
      a.params.push_back({v, types[static_cast<std::size_t>(pick(4))]});
    }
    auto random_literal = [&]() -> ParamLiteral {
      for (;;) {
        int kind = pick(4);
        std::string v = vars[static_cast<std::size_t>(pick(n_par))];
        bool positive = pick(3) != 0;
        if (kind == 0) return {"p", {v}, positive};
        if (kind == 1) {
          // q needs an a-typed argument.
          const std::string& ty = a.params[static_cast<std::size_t>(std::stoi(v.substr(2)))].type;
          if (ty != "a" && ty != "a1") continue;
          return {"q", {v}, positive};
        }
        if (kind == 2) return {"r", {v, vars[static_cast<std::size_t>(pick(n_par))]}, positive};
        return {"flag", {}, positive};
      }
    };
    const int n_pre = pick(3);
    for (int i = 0; i < n_pre; ++i) a.pre.push_back(random_literal());
    if (n_par == 2 && pick(2) == 0) a.pre.push_back({"=", {"?x0", "?x1"}, false});
    const int n_eff = 1 + pick(2);
    for (int i = 0; i < n_eff; ++i) a.eff.push_back(random_literal());
    t.actions[a.name] = a;
  }

  for (const auto& e : ents) {
    if (pick(3) == 0) t.init.insert({"p", {e}});
    for (const auto& f : ents) {
      if (pick(6) == 0) t.init.insert({"r", {e, f}});
    }
  }
  if (pick(2) == 0) t.init.insert({"flag", {}});

  const int n_goal = 1 + pick(2);
  for (int i = 0; i < n_goal; ++i) {
    const std::string& e = ents[static_cast<std::size_t>(pick(n_ent))];
    const std::string& f = ents[static_cast<std::size_t>(pick(n_ent))];
    int kind = pick(3);
    bool positive = pick(4) != 0;
    if (kind == 0) t.goal.push_back({{"p", {e}}, positive});
    else if (kind == 1) t.goal.push_back({{"r", {e, f}}, positive});
    else t.goal.push_back({{"flag", {}}, positive});
  }
  t.normalize();
  return t;
}

std::vector<OracleAction> oracle_ground(const PlanningTask& task) {
  std::vector<OracleAction> out;
  std::vector<std::string> ents;
  for (const auto& [e, _] : task.entities) ents.push_back(e);
  for (const auto& [name, a] : task.actions) {
    const std::size_t n = a.params.size();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      if (ents.empty() && n > 0) break;
      std::map<std::string, std::string> bind;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        bind[a.params[i].name] = ents[idx[i]];
        ok = oracle_has_type(task, ents[idx[i]], a.params[i].type);
      }
      auto arg = [&](const std::string& term) {
        return term.size() && term[0] == '?' ? bind.at(term) : term;
      };
      OracleAction g;
      if (ok) {
        g.name = name;
        for (const auto& p : a.params) g.args.push_back(bind.at(p.name));
        for (const auto& l : a.pre) {
          if (l.predicate == "=") {
            bool eq = arg(l.terms[0]) == arg(l.terms[1]);
            if (eq != l.positive) ok = false;
            continue;
          }
          Atom at{l.predicate, {}};
          for (const auto& term : l.terms) at.args.push_back(arg(term));
          g.pre.emplace_back(at, l.positive);
        }
        for (const auto& l : a.eff) {
          Atom at{l.predicate, {}};
          for (const auto& term : l.terms) at.args.push_back(arg(term));
          g.eff.emplace_back(at, l.positive);
        }
      }
      if (ok) out.push_back(std::move(g));
      std::size_t i = 0;
      while (i < n && ++idx[i] == ents.size()) idx[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

namespace {

bool applicable(const std::set<Atom>& s, const OracleAction& a) {
  for (const auto& [at, pos] : a.pre) {
    if ((s.count(at) > 0) != pos) return false;
  }
  return true;
}

std::set<Atom> successor(std::set<Atom> s, const OracleAction& a) {
  for (const auto& [at, pos] : a.eff) {
    if (!pos) s.erase(at);
  }
  for (const auto& [at, pos] : a.eff) {
    if (pos) s.insert(at);
  }
  return s;
}

bool goal_met(const std::set<Atom>& s, const std::vector<Literal>& goal) {
  for (const auto& l : goal) {
    if ((s.count(l.atom) > 0) != l.positive) return false;
  }
  return true;
}

}  // namespace

std::optional<int> bfs_length(const PlanningTask& task, std::size_t cap) {
  const auto actions = oracle_ground(task);
  // A goal literal that is false initially and that no action produces is
  // unreachable; skip the search.
  for (const auto& g : task.goal) {
    if ((task.init.count(g.atom) > 0) == g.positive) continue;
    bool produced = false;
    for (const auto& a : actions) {
      for (const auto& [at, pos] : a.eff) produced = produced || (at == g.atom && pos == g.positive);
    }
    if (!produced) return std::nullopt;
  }
  std::map<std::set<Atom>, int> dist;
  std::deque<std::set<Atom>> queue;
  dist[task.init] = 0;
  queue.push_back(task.init);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    const int d = dist[s];
    if (goal_met(s, task.goal)) return d;
    for (const auto& a : actions) {
      if (!applicable(s, a)) continue;
      auto n = successor(s, a);
      if (dist.emplace(n, d + 1).second) {
        if (dist.size() > cap) return -2;
        queue.push_back(std::move(n));
      }
    }
  }
  return std::nullopt;
}

bool oracle_validate(const PlanningTask& task, const std::vector<PlanStep>& plan) {
  const auto actions = oracle_ground(task);
  std::set<Atom> s = task.init;
  for (const auto& step : plan) {
    const OracleAction* match = nullptr;
    for (const auto& a : actions) {
      if (a.name == step.action && a.args == step.args) {
        match = &a;
        break;
      }
    }
    if (!match || !applicable(s, *match)) return false;
    s = successor(std::move(s), *match);
  }
  return goal_met(s, task.goal);
}

}  // namespace testsupport
