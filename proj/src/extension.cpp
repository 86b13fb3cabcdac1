#include "extension.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace skillforge {

std::vector<int> segment_starts(int steps, const std::vector<PredicateChange>& candidates) {
  std::set<int> cuts;
  for (const auto& c : candidates) {
    if (c.step + 1 < steps) cuts.insert(c.step + 1);
  }
  std::vector<int> out{0};
  out.insert(out.end(), cuts.begin(), cuts.end());
  return out;
}

std::string next_meta_name(const PlanningTask& task) {
  for (int k = 1;; ++k) {
    std::string name = "meta-" + std::to_string(k);
    if (!task.actions.count(name)) return name;
  }
}

namespace {

// Origin of a leading navigation step, when that entity plays no other role
// in the segment.
std::optional<std::string> segment_origin(const PlanningTask& task,
                                          const std::vector<PlanStep>& seg) {
  if (seg.empty()) return std::nullopt;
  const auto& first = seg.front();
  if (task.actions.at(first.action).skill != "navigate" || first.args.size() < 3) {
    return std::nullopt;
  }
  const std::string& o = first.args[1];
  for (std::size_t j = 0; j < seg.size(); ++j) {
    for (std::size_t i = 0; i < seg[j].args.size(); ++i) {
      if (j == 0 && i == 1) continue;
      if (seg[j].args[i] == o) return std::nullopt;
    }
  }
  return o;
}

}  // namespace

PlanningTask extend_symbolic_description(const PlanningTask& task, const DiscoveryResult& replay,
                                         const std::vector<PredicateChange>& candidates,
                                         const PlannerOptions& options) {
  const auto& steps = replay.steps;
  const int n = static_cast<int>(steps.size());
  if (n == 0) throw Error(ErrorCode::kExtensionInvalid, "empty sequence");
  auto starts = segment_starts(n, candidates);
  starts.push_back(n);

  PlanningTask out = task;
  for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
    const int b = starts[k], e = starts[k + 1];
    const bool final_segment = e == n;
    std::vector<PlanStep> seg(steps.begin() + b, steps.begin() + e);

    // Preconditions: needed by some step and not produced earlier in the
    // segment, plus candidates established by earlier segments.
    std::set<Literal> pre;
    std::set<std::pair<std::string, std::string>> distinct;
    std::map<Atom, bool> produced;
    for (const auto& s : seg) {
      const ActionSchema& a = task.actions.at(s.action);
      Binding bind = make_binding(a, s.args);
      for (const auto& pl : a.pre) {
        if (pl.predicate == "=") {
          if (!pl.positive) distinct.insert({bind.at(pl.terms[0]), bind.at(pl.terms[1])});
          continue;
        }
        Literal l = ground(pl, bind);
        if (produced.count(l.atom)) continue;
        pre.insert(l);
      }
      for (const auto& l : ground_effects(a, bind)) produced[l.atom] = l.positive;
    }
    for (const auto& c : candidates) {
      if (c.step < b) pre.insert(c.literal);
    }

    // Effects: modelled net change, overridden by the observed one.
    std::map<Atom, bool> eff;
    SymbolicState before = progress(task, task.init, {steps.begin(), steps.begin() + b});
    SymbolicState after = progress(task, before, seg);
    for (const auto& a : before) {
      if (!after.count(a)) eff[a] = false;
    }
    for (const auto& a : after) {
      if (!before.count(a)) eff[a] = true;
    }
    const auto& ob = replay.images[b];
    const auto& oa = replay.images[e];
    for (const auto& a : ob) {
      if (!oa.count(a)) eff[a] = false;
    }
    for (const auto& a : oa) {
      if (!ob.count(a)) eff[a] = true;
    }
    if (final_segment) {
      for (const auto& g : task.goal) eff[g.atom] = g.positive;
    }

    // Parameters in order of first appearance.
    std::set<std::string> literal_entities, other_roles;
    auto note = [&](const Atom& a) {
      literal_entities.insert(a.args.begin(), a.args.end());
      if (a.predicate != "near") other_roles.insert(a.args.begin(), a.args.end());
    };
    for (const auto& l : pre) note(l.atom);
    for (const auto& [a, _] : eff) note(a);
    auto origin = segment_origin(task, seg);
    if (origin && other_roles.count(*origin)) origin.reset();
    std::vector<std::string> entities;
    auto add = [&](const std::string& x) {
      if (std::find(entities.begin(), entities.end(), x) == entities.end()) entities.push_back(x);
    };
    for (const auto& s : seg) {
      for (const auto& a : s.args) add(a);
    }
    for (const auto& x : literal_entities) add(x);

    ActionSchema meta;
    meta.name = next_meta_name(out);
    meta.kind = ActionKind::kMeta;
    std::map<std::string, std::string> var;
    for (std::size_t i = 0; i < entities.size(); ++i) {
      const std::string& x = entities[i];
      const std::string v = "?v" + std::to_string(i);
      var[x] = v;
      if (origin && x == *origin) {
        meta.params.push_back({v, "locatable"});
        continue;
      }
      const std::string base = base_type_of(out, x);
      const std::string sub = next_subtype_name(out.types, base);
      out = add_subtype_branch(out, base, sub, {x});
      meta.params.push_back({v, sub});
    }
    auto lift = [&](const Literal& l) {
      ParamLiteral p{l.atom.predicate, {}, l.positive};
      for (const auto& a : l.atom.args) p.terms.push_back(var.at(a));
      return p;
    };
    for (const auto& l : pre) meta.pre.push_back(lift(l));
    for (const auto& [x, y] : distinct) {
      if (var.count(x) && var.count(y)) meta.pre.push_back({"=", {var[x], var[y]}, false});
    }
    for (const auto& [a, v] : eff) meta.eff.push_back(lift({a, v}));
    for (const auto& s : seg) {
      ExpansionStep es{s.action, {}, s.extra};
      for (const auto& a : s.args) es.args.push_back(var.at(a));
      meta.expansion.push_back(std::move(es));
    }
    meta.normalize();
    out.actions[meta.name] = std::move(meta);
  }

  out.normalize();
  out.validate();
  PlanOutcome check = solve(out, options);
  if (check.status != PlanStatus::kSolved) {
    throw Error(ErrorCode::kExtensionInvalid, "extended task does not solve the goal");
  }
  return out;
}

}  // namespace skillforge
