#include <doctest.h>

#include <random>

#include "completion.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace skillforge;

namespace {

PlanningTask c1_task() {
  PlanningTask t = load_scenario("c1").task;
  t.goal.clear();
  return t;
}

void check_structure(const PlanningTask& task, const std::vector<KeyAction>& keys,
                     const CompletedSequence& c) {
  REQUIRE(c.key_indices.size() == keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) CHECK(c.key_indices[i] > c.key_indices[i - 1]);
    const PlanStep& s = c.steps[static_cast<std::size_t>(c.key_indices[i])];
    CHECK(s.action == keys[i].action);
    const auto& params = task.actions.at(s.action).params;
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto it = keys[i].binding.find(params[k].name);
      if (it != keys[i].binding.end()) CHECK(s.args[k] == it->second);
    }
  }
  CHECK(testsupport::oracle_validate(task, c.steps));
}

}  // namespace

TEST_CASE("move lid then place cube completes to an executable sequence") {
  PlanningTask t = c1_task();
  std::vector<KeyAction> keys{
      {"move", {{"?r", "robot"}, {"?o", "lid1"}}, {Vec3{0.3, 0, 0}, std::nullopt}},
      {"place", {{"?r", "robot"}, {"?o", "cube"}, {"?p", "in1"}}, {}},
  };
  auto c = sequence_completion(t, keys);
  check_structure(t, keys, c);
  CHECK(c.steps.front().action == "navigate");
  CHECK(c.steps[1] == PlanStep{"grasp", {"robot", "lid1"}, {}});
  CHECK(c.steps.back().action == "place");
  CHECK(c.steps.size() >= 8);
  CHECK(c.steps.size() <= 12);
}

TEST_CASE("a key action that already applies gets an empty fill") {
  PlanningTask t = c1_task();
  std::vector<KeyAction> keys{{"navigate", {{"?r", "robot"}, {"?to", "cube"}}, {}}};
  auto c = sequence_completion(t, keys);
  CHECK(c.key_indices == std::vector<int>{0});
  REQUIRE(c.steps.size() == 1);
  // The open origin is bound from the state.
  CHECK(c.steps[0].args == std::vector<std::string>{"robot", "home", "cube"});
}

TEST_CASE("context parameters") {
  PlanningTask t = basic_domain();
  CHECK(context_params(t.actions.at("navigate")) == std::vector<std::string>{"?from"});
  CHECK(context_params(t.actions.at("grasp")).empty());
  CHECK(context_params(t.actions.at("place")).empty());
}

TEST_CASE("an unreachable key action reports its index") {
  PlanningTask t = c1_task();
  t.actions.erase("grasp");
  std::vector<KeyAction> keys{
      {"navigate", {{"?r", "robot"}, {"?to", "cube"}}, {}},
      {"place", {{"?r", "robot"}, {"?o", "cube"}, {"?p", "in1"}}, {}},
  };
  try {
    sequence_completion(t, keys);
    FAIL("expected a completion failure");
  } catch (const CompletionFailure& e) {
    CHECK(e.key_index() == 1);
    CHECK(e.status() == PlanStatus::kUnsolvable);
    CHECK(e.code() == ErrorCode::kCompletionFailure);
  }
}

TEST_CASE("random key sequences: keys survive and the result validates") {
  PlanningTask t = c1_task();
  std::vector<std::string> movables, positions;
  for (const auto& [e, _] : t.entities) {
    if (t.entity_has_type(e, "movable")) movables.push_back(e);
    if (t.entity_has_type(e, "position")) positions.push_back(e);
  }
  std::mt19937 rng(9);
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  int completed = 0;
  double steps_per_key = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<KeyAction> keys;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) {
        keys.push_back({"place", {{"?r", "robot"}, {"?o", pick(movables)}, {"?p", pick(positions)}}, {}});
      } else {
        keys.push_back({"move", {{"?r", "robot"}, {"?o", pick(movables)}}, {Vec3{0.1, 0, 0}, std::nullopt}});
      }
    }
    try {
      auto c = sequence_completion(t, keys);
      check_structure(t, keys, c);
      ++completed;
      steps_per_key += static_cast<double>(c.steps.size()) / static_cast<double>(keys.size());
    } catch (const CompletionFailure& e) {
      CHECK(e.key_index() >= 0);
      CHECK(e.key_index() < n);
    }
  }
  REQUIRE(completed > 20);
  steps_per_key /= completed;
  CHECK(steps_per_key >= 2.0);
  CHECK(steps_per_key <= 6.0);
}
