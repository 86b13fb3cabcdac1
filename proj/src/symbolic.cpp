#include "symbolic.hpp"

#include <algorithm>
#include <deque>

namespace skillforge {

TypeHierarchy::TypeHierarchy() { parents_[kRootType] = {}; }

void TypeHierarchy::add(const std::string& type, const std::string& parent) {
  if (!contains(parent)) {
    throw Error(ErrorCode::kUndeclaredType, "unknown parent type '" + parent + "'");
  }
  if (type == kRootType) {
    throw Error(ErrorCode::kInvalidTask, "the root type cannot have parents");
  }
  if (is_subtype(parent, type) && contains(type)) {
    throw Error(ErrorCode::kInvalidTask, "type edge " + type + " -> " + parent + " forms a cycle");
  }
  parents_[type].insert(parent);
}

bool TypeHierarchy::is_subtype(const std::string& sub, const std::string& super) const {
  if (sub == super) return contains(sub);
  if (!contains(sub)) return false;
  std::set<std::string> seen;
  std::deque<std::string> queue{sub};
  while (!queue.empty()) {
    std::string t = queue.front();
    queue.pop_front();
    if (t == super) return true;
    if (!seen.insert(t).second) continue;
    auto it = parents_.find(t);
    if (it == parents_.end()) continue;
    for (const auto& p : it->second) queue.push_back(p);
  }
  return false;
}

const std::set<std::string>& TypeHierarchy::parents(const std::string& type) const {
  auto it = parents_.find(type);
  if (it == parents_.end()) throw Error(ErrorCode::kUndeclaredType, "unknown type '" + type + "'");
  return it->second;
}

std::set<std::string> TypeHierarchy::names() const {
  std::set<std::string> out;
  for (const auto& [name, _] : parents_) out.insert(name);
  return out;
}

std::string to_string(const Atom& atom) {
  std::string s = "(" + atom.predicate;
  for (const auto& a : atom.args) s += " " + a;
  return s + ")";
}

std::string to_string(const Literal& lit) {
  return lit.positive ? to_string(lit.atom) : "(not " + to_string(lit.atom) + ")";
}

void ActionSchema::normalize() {
  for (auto* v : {&pre, &eff}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

bool PlanningTask::entity_has_type(const std::string& entity, const std::string& type) const {
  auto it = entities.find(entity);
  if (it == entities.end()) return false;
  for (const auto& t : it->second) {
    if (types.is_subtype(t, type)) return true;
  }
  return false;
}

void PlanningTask::normalize() {
  for (auto& [_, a] : actions) a.normalize();
  std::sort(goal.begin(), goal.end());
  goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
}

namespace {

void check_atom(const PlanningTask& task, const Atom& atom, const std::string& where) {
  auto it = task.predicates.find(atom.predicate);
  if (it == task.predicates.end()) {
    throw Error(ErrorCode::kUnknownPredicate, where + ": unknown predicate " + atom.predicate);
  }
  if (it->second.params.size() != atom.args.size()) {
    throw Error(ErrorCode::kArityMismatch, where + ": arity mismatch in " + to_string(atom));
  }
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (!task.entities.count(atom.args[i])) {
      throw Error(ErrorCode::kUnknownEntity, where + ": unknown entity " + atom.args[i]);
    }
    if (!task.entity_has_type(atom.args[i], it->second.params[i].type)) {
      throw Error(ErrorCode::kInvalidTask,
                  where + ": " + atom.args[i] + " is not a " + it->second.params[i].type);
    }
  }
}

}  // namespace

void PlanningTask::validate() const {
  for (const auto& [name, schema] : predicates) {
    std::set<std::string> seen;
    for (const auto& p : schema.params) {
      if (!seen.insert(p.name).second) {
        throw Error(ErrorCode::kInvalidTask, "duplicate parameter " + p.name + " in " + name);
      }
      if (!types.contains(p.type)) {
        throw Error(ErrorCode::kUndeclaredType, "predicate " + name + " uses type " + p.type);
      }
    }
  }
  for (const auto& [name, action] : actions) {
    std::set<std::string> vars;
    for (const auto& p : action.params) {
      vars.insert(p.name);
      if (!types.contains(p.type)) {
        throw Error(ErrorCode::kUndeclaredType, "action " + name + " uses type " + p.type);
      }
    }
    for (const auto* lits : {&action.pre, &action.eff}) {
      for (const auto& l : *lits) {
        if (l.predicate != "=" && !predicates.count(l.predicate)) {
          throw Error(ErrorCode::kUnknownPredicate, "action " + name + ": " + l.predicate);
        }
        for (const auto& t : l.terms) {
          if (is_variable(t) && !vars.count(t)) {
            throw Error(ErrorCode::kUnboundVariable, "action " + name + ": free variable " + t);
          }
        }
      }
    }
    if (action.is_meta()) {
      for (const auto& step : action.expansion) {
        auto it = actions.find(step.action);
        if (it == actions.end() || it->second.is_meta()) {
          throw Error(ErrorCode::kInvalidTask,
                      "meta-action " + name + " expands to non-basic " + step.action);
        }
      }
    }
  }
  for (const auto& [entity, ts] : entities) {
    for (const auto& t : ts) {
      if (!types.contains(t)) throw Error(ErrorCode::kUndeclaredType, entity + " has type " + t);
    }
  }
  for (const auto& a : init) check_atom(*this, a, "init");
  for (const auto& l : goal) check_atom(*this, l.atom, "goal");
}

bool holds(const SymbolicState& state, const Literal& lit) {
  return state.count(lit.atom) > 0 ? lit.positive : !lit.positive;
}

bool satisfies(const SymbolicState& state, const std::vector<Literal>& goal) {
  return std::all_of(goal.begin(), goal.end(), [&](const Literal& l) { return holds(state, l); });
}

namespace {

const std::string& resolve(const std::string& term, const Binding& binding) {
  if (!is_variable(term)) return term;
  auto it = binding.find(term);
  if (it == binding.end()) throw Error(ErrorCode::kUnboundVariable, "unbound variable " + term);
  return it->second;
}

}  // namespace

Literal ground(const ParamLiteral& lit, const Binding& binding) {
  Literal out;
  out.positive = lit.positive;
  out.atom.predicate = lit.predicate;
  out.atom.args.reserve(lit.terms.size());
  for (const auto& t : lit.terms) out.atom.args.push_back(resolve(t, binding));
  return out;
}

bool ground_equality(const ParamLiteral& lit, const Binding& binding) {
  bool equal = resolve(lit.terms.at(0), binding) == resolve(lit.terms.at(1), binding);
  return lit.positive ? equal : !equal;
}

std::vector<Literal> ground_preconditions(const ActionSchema& action, const Binding& binding) {
  std::vector<Literal> out;
  for (const auto& p : action.pre) {
    if (p.predicate != "=") out.push_back(ground(p, binding));
  }
  return out;
}

std::vector<Literal> ground_effects(const ActionSchema& action, const Binding& binding) {
  std::vector<Literal> out;
  out.reserve(action.eff.size());
  for (const auto& e : action.eff) out.push_back(ground(e, binding));
  return out;
}

SymbolicState apply_effects(const SymbolicState& state, const ActionSchema& action,
                            const Binding& binding) {
  SymbolicState next = state;
  auto effects = ground_effects(action, binding);
  // Deletes first, then adds: an atom both deleted and added stays true.
  for (const auto& e : effects) {
    if (!e.positive) next.erase(e.atom);
  }
  for (const auto& e : effects) {
    if (e.positive) next.insert(e.atom);
  }
  return next;
}

bool preconditions_met(const SymbolicState& state, const ActionSchema& action,
                       const Binding& binding) {
  for (const auto& p : action.pre) {
    for (const auto& t : p.terms) resolve(t, binding);
  }
  for (const auto& p : action.pre) {
    if (p.predicate == "=") {
      if (!ground_equality(p, binding)) return false;
    } else if (!holds(state, ground(p, binding))) {
      return false;
    }
  }
  return true;
}

Binding make_binding(const ActionSchema& action, const std::vector<std::string>& args) {
  if (args.size() != action.params.size()) {
    throw Error(ErrorCode::kArityMismatch, "action " + action.name + " expects " +
                                               std::to_string(action.params.size()) + " arguments");
  }
  Binding b;
  for (std::size_t i = 0; i < args.size(); ++i) b[action.params[i].name] = args[i];
  return b;
}

bool binding_type_valid(const PlanningTask& task, const ActionSchema& action,
                        const Binding& binding) {
  for (const auto& p : action.params) {
    auto it = binding.find(p.name);
    if (it == binding.end() || !task.entity_has_type(it->second, p.type)) return false;
  }
  return true;
}

PlanningTask add_subtype_branch(const PlanningTask& task, const std::string& base_type,
                                const std::string& new_type,
                                const std::vector<std::string>& members) {
  if (!task.types.contains(base_type)) {
    throw Error(ErrorCode::kUndeclaredType, "unknown base type " + base_type);
  }
  if (task.types.contains(new_type)) {
    throw Error(ErrorCode::kDuplicateType, "type " + new_type + " already exists");
  }
  for (const auto& m : members) {
    if (!task.entities.count(m)) throw Error(ErrorCode::kUnknownEntity, "unknown entity " + m);
  }
  PlanningTask out = task;
  out.types.add(new_type, base_type);
  for (const auto& m : members) out.entities[m].insert(new_type);
  return out;
}

std::string next_subtype_name(const TypeHierarchy& types, const std::string& base_type) {
  for (int k = 1;; ++k) {
    std::string name = base_type + "-sub-" + std::to_string(k);
    if (!types.contains(name)) return name;
  }
}

std::string base_type_of(const PlanningTask& task, const std::string& entity) {
  auto it = task.entities.find(entity);
  if (it == task.entities.end()) throw Error(ErrorCode::kUnknownEntity, "unknown entity " + entity);
  for (const auto& t : it->second) {
    bool below_other = false;
    for (const auto& u : it->second) {
      if (u != t && task.types.is_subtype(t, u)) below_other = true;
    }
    if (!below_other) return t;
  }
  return kRootType;
}

}  // namespace skillforge
