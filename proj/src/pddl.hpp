#pragma once

// Reader and writer for the supported PDDL fragment
// (:strips :typing :negative-preconditions :equality).
//
// Information PDDL cannot carry is kept in `;; :` annex comment lines that
// other planners ignore:
//   ;; :skill <action> <skill>
//   ;; :expansion <meta> <basic> <arg>... [:displacement x y z] [:orientation upright|lying]
//   ;; :parent <type> <additional-parent>
//   ;; :entity-type <entity> <type>        (domain: learned entity typing)
//   ;; :types <entity> <type>...           (problem: full type set)
//   ;; :location <entity> <x> <y> <z>

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "symbolic.hpp"

namespace skillforge::pddl {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(ErrorCode::kSyntax, std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct DomainFragment {
  std::string name;
  TypeHierarchy types;
  std::map<std::string, PredicateSchema> predicates;
  std::map<std::string, ActionSchema> actions;
  // Typing and coordinates learned for specific entities (carried by
  // extended domains so they can be applied to later problems).
  std::map<std::string, std::set<std::string>> entity_types;
  std::map<std::string, Vec3> locations;

  bool operator==(const DomainFragment&) const = default;
};

struct ProblemFragment {
  std::string name;
  std::string domain;
  std::map<std::string, std::set<std::string>> entities;
  SymbolicState init;
  std::vector<Literal> goal;
  std::map<std::string, Vec3> locations;

  bool operator==(const ProblemFragment&) const = default;
};

DomainFragment parse_domain(std::string_view text);
ProblemFragment parse_problem(std::string_view text, const DomainFragment& domain);

// Combines the fragments. Learned entity typings are merged for entities
// that exist in the problem; learned positions become entities.
PlanningTask make_task(const DomainFragment& domain, const ProblemFragment& problem);

DomainFragment domain_of(const PlanningTask& task);
ProblemFragment problem_of(const PlanningTask& task);

std::string serialize_domain(const DomainFragment& domain);
std::string serialize_problem(const ProblemFragment& problem);

// Domain part of a task; learned typing of every entity whose types go
// beyond its base type is recorded in the annex.
std::string serialize_domain(const PlanningTask& task);
std::string serialize_problem(const PlanningTask& task);
// Domain text followed by problem text.
std::string serialize(const PlanningTask& task);

PlanningTask parse_task(std::string_view domain_text, std::string_view problem_text);

std::string format_number(double v);

}  // namespace skillforge::pddl
