#include <doctest.h>

#include <random>

#include "skills_domain.hpp"
#include "symbolic.hpp"

using namespace skillforge;

namespace {

Literal lit(std::string p, std::vector<std::string> args, bool positive = true) {
  return Literal{Atom{std::move(p), std::move(args)}, positive};
}

ActionSchema grasp_like() {
  ActionSchema a;
  a.name = "grasp";
  a.params = {{"?o", "movable"}};
  a.pre = {{"handempty", {}, true}, {"near", {"robot", "?o"}, true}};
  a.eff = {{"in-gripper", {"?o"}, true}, {"handempty", {}, false}};
  return a;
}

}  // namespace

TEST_CASE("holds uses closed-world semantics") {
  SymbolicState s{{"on", {"cube", "table"}}};
  CHECK(holds(s, lit("on", {"cube", "table"})));
  CHECK_FALSE(holds(s, lit("inside", {"c1", "cube"})));
  CHECK(holds(SymbolicState{}, lit("inside", {"c1", "cube"}, false)));
  CHECK_FALSE(holds(s, lit("on", {"cube", "table"}, false)));
}

TEST_CASE("apply_effects removes then inserts and keeps the frame") {
  ActionSchema place;
  place.name = "place";
  place.params = {{"?o", "movable"}, {"?p", "position"}};
  place.eff = {{"in-gripper", {"?o"}, false}, {"at", {"?o", "?p"}, true}};
  SymbolicState s{{"in-gripper", {"cube"}}};
  auto r = apply_effects(s, place, {{"?o", "cube"}, {"?p", "p1"}});
  CHECK(r == SymbolicState{{"at", {"cube", "p1"}}});

  ActionSchema noop;
  noop.name = "noop";
  SymbolicState any{{"on", {"a", "b"}}, {"handempty", {}}};
  CHECK(apply_effects(any, noop, {}) == any);

  auto g = grasp_like();
  Binding b{{"?o", "cube"}};
  auto once = apply_effects({}, g, b);
  CHECK(apply_effects(once, g, b) == once);
  CHECK(once == SymbolicState{{"in-gripper", {"cube"}}});
}

TEST_CASE("unbound effect variable is an error") {
  auto g = grasp_like();
  try {
    apply_effects({}, g, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnboundVariable);
  }
  CHECK_THROWS_AS(preconditions_met({}, g, {}), Error);
}

TEST_CASE("preconditions_met") {
  auto g = grasp_like();
  Binding b{{"?o", "cube"}};
  CHECK(preconditions_met({{"handempty", {}}, {"near", {"robot", "cube"}}}, g, b));
  CHECK_FALSE(preconditions_met({}, g, b));
}

TEST_CASE("preconditions_met and apply_effects agree with a literal-by-literal oracle") {
  std::mt19937 rng(7);
  const std::vector<std::string> ents{"a", "b", "c"};
  const std::vector<std::string> preds{"p", "q"};
  std::vector<Atom> universe;
  for (const auto& p : preds) {
    for (const auto& x : ents) {
      for (const auto& y : ents) universe.push_back({p, {x, y}});
    }
  }
  auto coin = [&] { return rng() % 2 == 0; };
  for (int trial = 0; trial < 500; ++trial) {
    ActionSchema a;
    a.name = "act";
    a.params = {{"?x", "object"}, {"?y", "object"}};
    const std::vector<std::string> vars{"?x", "?y"};
    for (int k = 0; k < 3; ++k) {
      a.pre.push_back({preds[rng() % 2], {vars[rng() % 2], vars[rng() % 2]}, coin()});
      a.eff.push_back({preds[rng() % 2], {vars[rng() % 2], vars[rng() % 2]}, coin()});
    }
    Binding b{{"?x", ents[rng() % 3]}, {"?y", ents[rng() % 3]}};
    SymbolicState s;
    for (const auto& at : universe) {
      if (coin()) s.insert(at);
    }

    bool oracle = true;
    for (const auto& l : a.pre) {
      Atom at{l.predicate, {b[l.terms[0]], b[l.terms[1]]}};
      oracle = oracle && (s.count(at) > 0) == l.positive;
    }
    CHECK(preconditions_met(s, a, b) == oracle);

    SymbolicState expected = s;
    for (const auto& l : a.eff) {
      if (!l.positive) expected.erase(Atom{l.predicate, {b[l.terms[0]], b[l.terms[1]]}});
    }
    for (const auto& l : a.eff) {
      if (l.positive) expected.insert(Atom{l.predicate, {b[l.terms[0]], b[l.terms[1]]}});
    }
    auto got = apply_effects(s, a, b);
    CHECK(got == expected);

    // Positive effects hold; negative effects that are not also added fail;
    // atoms outside the ground effect set are untouched.
    std::set<Atom> touched;
    for (const auto& l : ground_effects(a, b)) {
      touched.insert(l.atom);
      if (l.positive) CHECK(got.count(l.atom) == 1);
    }
    for (const auto& at : universe) {
      if (!touched.count(at)) CHECK(got.count(at) == s.count(at));
    }
  }
}

TEST_CASE("type hierarchy is reflexive, transitive and supports multiple parents") {
  TypeHierarchy t;
  t.add("locatable", "object");
  t.add("movable", "locatable");
  t.add("item", "movable");
  t.add("receptacle", "locatable");
  t.add("receptacle-sub-1", "receptacle");
  t.add("special", "item");
  t.add("special", "receptacle-sub-1");
  CHECK(t.is_subtype("item", "item"));
  CHECK(t.is_subtype("special", "object"));
  CHECK(t.is_subtype("special", "receptacle-sub-1"));
  CHECK_FALSE(t.is_subtype("locatable", "item"));
  for (const auto& name : t.names()) {
    if (name != "object") CHECK_FALSE(t.parents(name).empty());
    CHECK(t.is_subtype(name, "object"));
  }
}

TEST_CASE("add_subtype_branch follows the new-subtype pattern") {
  PlanningTask task = basic_domain();
  task.entities = {{"robot", {"robot"}}, {"cube", {"item"}}, {"cupboard", {"receptacle"}},
                   {"pos-0", {"position"}}};
  task.normalize();
  const auto before = task.types;

  auto t1 = add_subtype_branch(task, "item", next_subtype_name(task.types, "item"), {"cube"});
  auto t2 = add_subtype_branch(t1, "receptacle", next_subtype_name(t1.types, "receptacle"),
                               {"cupboard"});
  auto t3 = add_subtype_branch(t2, "position", next_subtype_name(t2.types, "position"), {"pos-0"});
  CHECK(t3.entities.at("cube") == std::set<std::string>{"item", "item-sub-1"});
  CHECK(t3.entities.at("cupboard") == std::set<std::string>{"receptacle", "receptacle-sub-1"});
  CHECK(t3.entities.at("pos-0") == std::set<std::string>{"position", "position-sub-1"});
  CHECK(t3.types.is_subtype("item-sub-1", "movable"));

  // Pre-existing subtype pairs are preserved.
  for (const auto& a : before.names()) {
    for (const auto& b : before.names()) {
      CHECK(before.is_subtype(a, b) == t3.types.is_subtype(a, b));
    }
  }

  SUBCASE("empty member list only grows the hierarchy") {
    auto e = add_subtype_branch(task, "item", "item-sub-1", {});
    CHECK(e.types.contains("item-sub-1"));
    CHECK(e.entities == task.entities);
  }
  SUBCASE("two branches union with the original types") {
    auto a = add_subtype_branch(task, "item", "item-sub-1", {"cube"});
    auto b = add_subtype_branch(a, "item", "item-sub-2", {"cube"});
    std::set<std::string> expected = task.entities.at("cube");
    expected.insert("item-sub-1");
    expected.insert("item-sub-2");
    CHECK(b.entities.at("cube") == expected);
  }
  SUBCASE("errors") {
    try {
      add_subtype_branch(task, "item", "item", {});
      FAIL("expected DuplicateType");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDuplicateType);
    }
    try {
      add_subtype_branch(task, "item", "item-sub-9", {"ghost"});
      FAIL("expected UnknownEntity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnknownEntity);
    }
  }
}

TEST_CASE("task validation rejects undeclared references") {
  PlanningTask task = basic_domain();
  task.entities = {{"robot", {"robot"}}, {"cube", {"item"}}};
  task.init = {{"handempty", {}}};
  task.normalize();
  CHECK_NOTHROW(task.validate());
  task.goal = {lit("on", {"cube", "ghost"})};
  CHECK_THROWS_AS(task.validate(), Error);
}
