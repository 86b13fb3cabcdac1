#include <doctest.h>

#include "planner.hpp"
#include "scenarios.hpp"
#include "skills_domain.hpp"
#include "support.hpp"

using namespace skillforge;

namespace {

PlanningTask item_task(int items) {
  PlanningTask t;
  t.types.add("item", "object");
  t.predicates["held"] = {"held", {{"?o", "item"}}};
  ActionSchema pick;
  pick.name = "pick";
  pick.skill = "pick";
  pick.params = {{"?o", "item"}};
  pick.eff = {{"held", {"?o"}, true}};
  t.actions["pick"] = pick;
  for (int i = 0; i < items; ++i) t.entities["i" + std::to_string(i)] = {"item"};
  t.normalize();
  return t;
}

}  // namespace

TEST_CASE("grounding enumerates type-consistent bindings") {
  CHECK(ground_actions(item_task(3)).size() == 3);
  CHECK(ground_actions(item_task(0)).empty());

  PlanningTask t = add_subtype_branch(item_task(3), "item", "item-sub-1", {"i1"});
  t.actions["pick"].params[0].type = "item-sub-1";
  auto g = ground_actions(t);
  REQUIRE(g.size() == 1);
  CHECK(g[0].args == std::vector<std::string>{"i1"});
  CHECK(g.size() == testsupport::oracle_ground(t).size());
}

TEST_CASE("ground_actions matches the enumeration oracle on random tasks") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto t = testsupport::random_task(rng);
    CHECK(ground_actions(t).size() == testsupport::oracle_ground(t).size());
  }
}

TEST_CASE("solve: trivial, unsolvable and single-step cases") {
  Scenario c1 = load_scenario("c1");

  PlanningTask done = c1.task;
  done.goal = {{{"handempty", {}}, true}};
  auto o = solve(done);
  CHECK(o.status == PlanStatus::kSolved);
  CHECK(o.plan.empty());

  // No basic action produces `inside`.
  auto u = solve(c1.task);
  CHECK(u.status == PlanStatus::kUnsolvable);

  PlanningTask near = c1.task;
  near.goal = {{{"near", {"robot", "cube"}}, true}};
  auto n = solve(near);
  REQUIRE(n.status == PlanStatus::kSolved);
  CHECK(n.plan.size() == 1);
  CHECK(n.plan[0].action == "navigate");
  CHECK(testsupport::bfs_length(near) == std::optional<int>(1));
  CHECK(validate_plan(near, n.plan));
}

TEST_CASE("budget exhaustion is reported separately") {
  Scenario c1 = load_scenario("c1");
  PlanningTask t = c1.task;
  t.goal = {{{"in-gripper", {"duck"}}, true}, {{"near", {"robot", "lid2"}}, true}};
  PlannerOptions tiny;
  tiny.node_budget = 1;
  CHECK(solve(t, tiny).status == PlanStatus::kBudgetExhausted);
  CHECK(solve(t).status == PlanStatus::kSolved);
}

TEST_CASE("plans validate independently; optimal mode matches breadth-first lengths") {
  std::mt19937_64 rng(3);
  int solved = 0;
  for (int i = 0; i < 60; ++i) {
    auto t = testsupport::random_task(rng);
    auto oracle = testsupport::bfs_length(t);
    if (oracle && *oracle == -2) continue;
    auto greedy = solve(t);
    PlannerOptions opt;
    opt.optimal = true;
    auto best = solve(t, opt);
    if (!oracle) {
      CHECK(greedy.status == PlanStatus::kUnsolvable);
      CHECK(best.status == PlanStatus::kUnsolvable);
      continue;
    }
    ++solved;
    REQUIRE(greedy.status == PlanStatus::kSolved);
    REQUIRE(best.status == PlanStatus::kSolved);
    CHECK(testsupport::oracle_validate(t, greedy.plan));
    CHECK(validate_plan(t, greedy.plan));
    CHECK(static_cast<int>(best.plan.size()) == *oracle);
    CHECK(static_cast<int>(greedy.plan.size()) >= *oracle);
  }
  CHECK(solved > 10);
}

TEST_CASE("solve is deterministic") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto t = testsupport::random_task(rng);
    auto a = solve(t), b = solve(t);
    CHECK(a.status == b.status);
    CHECK(a.plan == b.plan);
  }
}

TEST_CASE("validate_plan rejects inapplicable steps") {
  Scenario c1 = load_scenario("c1");
  PlanningTask t = c1.task;
  t.goal = {{{"in-gripper", {"cube"}}, true}};
  std::string why;
  CHECK_FALSE(validate_plan(t, {{"grasp", {"robot", "cube"}, {}}}, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("relaxing goal entity types") {
  PlanningTask t = add_subtype_branch(item_task(2), "item", "item-sub-1", {"i0"});
  t.entities["plate"] = {"item"};
  t.actions["pick"].params[0].type = "item-sub-1";
  t.normalize();
  auto before = ground_actions(t).size();

  CHECK(relax_goal_entity_types(t, {}) == t);
  auto r = relax_goal_entity_types(t, {"plate"});
  CHECK(r.entity_has_type("plate", "item-sub-1"));
  CHECK(r.entities.at("i1") == t.entities.at("i1"));
  CHECK(ground_actions(r).size() >= before);
  CHECK(ground_actions(r).size() == before + 1);
}

TEST_CASE("parse_plan reads one step per line") {
  auto p = parse_plan("(navigate robot home cube)\n\n(GRASP robot cube) ; comment\n");
  REQUIRE(p.size() == 2);
  CHECK(p[1].action == "grasp");
  CHECK(p[1].args == std::vector<std::string>{"robot", "cube"});
  CHECK_THROWS_AS(parse_plan("navigate robot"), Error);
}
