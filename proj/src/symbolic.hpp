#pragma once

// Formal model of a planning task: typed entities, predicates, basic and
// meta actions, closed-world symbolic states and their progression.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace skillforge {

enum class ErrorCode {
  kOk = 0,
  kSyntax,
  kUnsupportedRequirement,
  kUndeclaredType,
  kUnknownPredicate,
  kUnknownEntity,
  kArityMismatch,
  kUnboundVariable,
  kDuplicateType,
  kInvalidTask,
  kCompletionFailure,
  kExtensionInvalid,
  kCandidateDropped,
  kNoCompatibleEntity,
  kPriorUnavailable,
  kIo,
  kUsage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const std::string kRootType = "object";

class TypeHierarchy {
 public:
  TypeHierarchy();

  bool contains(const std::string& type) const { return parents_.count(type) > 0; }
  // Adds `type` below `parent`. Adding an existing type with a new parent
  // records an additional parent (multiple inheritance).
  void add(const std::string& type, const std::string& parent);
  bool is_subtype(const std::string& sub, const std::string& super) const;
  const std::set<std::string>& parents(const std::string& type) const;
  std::set<std::string> names() const;
  // Types that are strict descendants of nothing but the root-reachable set;
  // used when relaxing entity types.
  const std::map<std::string, std::set<std::string>>& edges() const { return parents_; }

  bool operator==(const TypeHierarchy&) const = default;

 private:
  std::map<std::string, std::set<std::string>> parents_;
};

struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

std::string to_string(const Atom& atom);

struct Literal {
  Atom atom;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

std::string to_string(const Literal& lit);

// Argument of a schema literal: a parameter variable ("?x") or a constant.
inline bool is_variable(const std::string& term) { return !term.empty() && term[0] == '?'; }

// A literal over action parameters. The predicate "=" denotes equality.
struct ParamLiteral {
  std::string predicate;
  std::vector<std::string> terms;
  bool positive = true;

  auto operator<=>(const ParamLiteral&) const = default;
  bool operator==(const ParamLiteral&) const = default;
};

struct TypedParam {
  std::string name;
  std::string type;

  auto operator<=>(const TypedParam&) const = default;
  bool operator==(const TypedParam&) const = default;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedParam> params;

  bool operator==(const PredicateSchema&) const = default;
};

enum class Orientation { kUpright, kLying };

// Continuous skill arguments that have no symbolic counterpart.
struct ContinuousArgs {
  std::optional<Vec3> displacement;
  std::optional<Orientation> orientation;

  bool operator==(const ContinuousArgs&) const = default;
};

// One element of a meta-action expansion: a basic action applied to the
// meta-action's parameter variables (or constants).
struct ExpansionStep {
  std::string action;
  std::vector<std::string> args;
  ContinuousArgs extra;

  bool operator==(const ExpansionStep&) const = default;
};

enum class ActionKind { kBasic, kMeta };

struct ActionSchema {
  std::string name;
  std::vector<TypedParam> params;
  std::vector<ParamLiteral> pre;
  std::vector<ParamLiteral> eff;
  ActionKind kind = ActionKind::kBasic;
  std::string skill;                     // basic: skill identifier in the simulator
  std::vector<ExpansionStep> expansion;  // meta: basic-action sequence

  bool is_meta() const { return kind == ActionKind::kMeta; }
  // Sorts and deduplicates pre/eff so structurally equal schemas compare equal.
  void normalize();

  bool operator==(const ActionSchema&) const = default;
};

using Binding = std::map<std::string, std::string>;
using SymbolicState = std::set<Atom>;

struct PlanningTask {
  std::string domain_name = "skills";
  std::string problem_name = "problem";
  TypeHierarchy types;
  std::map<std::string, PredicateSchema> predicates;
  std::map<std::string, ActionSchema> actions;
  std::map<std::string, std::set<std::string>> entities;
  SymbolicState init;
  std::vector<Literal> goal;
  // Coordinates of position-typed entities (sampled or named).
  std::map<std::string, Vec3> locations;

  bool entity_has_type(const std::string& entity, const std::string& type) const;
  void normalize();
  // Throws Error(kInvalidTask) on violated structural invariants.
  void validate() const;

  bool operator==(const PlanningTask&) const = default;
};

bool holds(const SymbolicState& state, const Literal& lit);
bool satisfies(const SymbolicState& state, const std::vector<Literal>& goal);

// Grounds a schema literal under a binding. Equality literals are not atoms;
// use ground_equality for those.
Literal ground(const ParamLiteral& lit, const Binding& binding);
bool ground_equality(const ParamLiteral& lit, const Binding& binding);

std::vector<Literal> ground_preconditions(const ActionSchema& action, const Binding& binding);
std::vector<Literal> ground_effects(const ActionSchema& action, const Binding& binding);

SymbolicState apply_effects(const SymbolicState& state, const ActionSchema& action,
                            const Binding& binding);
bool preconditions_met(const SymbolicState& state, const ActionSchema& action,
                       const Binding& binding);

// Builds the binding for positional arguments.
Binding make_binding(const ActionSchema& action, const std::vector<std::string>& args);
// True when each bound entity carries a subtype of the parameter type.
bool binding_type_valid(const PlanningTask& task, const ActionSchema& action,
                        const Binding& binding);

PlanningTask add_subtype_branch(const PlanningTask& task, const std::string& base_type,
                                const std::string& new_type,
                                const std::vector<std::string>& members);
// Next free `<base>-sub-<k>` name.
std::string next_subtype_name(const TypeHierarchy& types, const std::string& base_type);

// The most general declared types of an entity (those not below another of
// its types); the first of these is used as the branching base.
std::string base_type_of(const PlanningTask& task, const std::string& entity);

}  // namespace skillforge
