#include <doctest.h>

#include <algorithm>
#include <map>

#include "exploration.hpp"
#include "extension.hpp"

using namespace skillforge;

namespace {

struct Replay {
  Scenario sc;
  World world;
  PlanningTask task;
  WorldState s0;
  std::set<std::string> relevant;

  explicit Replay(const std::string& id, const std::map<std::string, Vec3>& extra = {})
      : sc(load_scenario(id)), world(sc.scene) {
    for (const auto& [name, p] : extra) world.set_position(name, p);
    task = scene_task(world, basic_domain(), sc.goal);
    s0 = world.snapshot();
    relevant = find_relevant_objects(sc.goal.literals, world, 1.5);
  }

  DiscoveryResult run(const std::vector<PlanStep>& seq) {
    return discover(world, s0, task, seq, relevant, sc.goal.vocabulary(), sc.goal.literals);
  }
};

std::vector<PlanStep> c1_solution() { return load_script(data_path("solutions/c1.json")).steps; }

// Candidates recomputed from the raw change log: unmodelled by an
// independent grounding of the step's effects, not a goal atom, not made by
// the last step, and changing exactly once.
std::vector<PredicateChange> recompute(const PlanningTask& task, const DiscoveryResult& r,
                                       const std::vector<Literal>& goal) {
  std::map<Atom, int> count;
  for (const auto& c : r.changes) ++count[c.literal.atom];
  std::vector<PredicateChange> out;
  for (const auto& c : r.changes) {
    const ActionSchema& a = task.actions.at(c.action.action);
    bool declared = false;
    for (const auto& e : a.eff) {
      Atom at{e.predicate, {}};
      for (const auto& t : e.terms) {
        auto it = std::find_if(a.params.begin(), a.params.end(),
                               [&](const TypedParam& p) { return p.name == t; });
        at.args.push_back(it == a.params.end() ? t : c.action.args[it - a.params.begin()]);
      }
      declared = declared || (at == c.literal.atom && e.positive == c.literal.positive);
    }
    bool in_goal = std::any_of(goal.begin(), goal.end(),
                               [&](const Literal& g) { return g.atom == c.literal.atom; });
    bool last = c.step == static_cast<int>(r.steps.size()) - 1;
    if (!declared && !in_goal && !last && count[c.literal.atom] == 1) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("relevant predicates") {
  Replay f("c1");
  const std::vector<std::string> vocab = f.sc.goal.vocabulary();
  CHECK(find_relevant_predicates({}, vocab, f.task).empty());

  auto rho = find_relevant_predicates({"cube", "container1"}, vocab, f.task);
  CHECK(rho.count({"inside", {"container1", "cube"}}));
  CHECK(rho.count({"closed", {"container1"}}));

  // Counting oracle: product of type-compatible member counts per schema.
  for (const auto& o : {std::set<std::string>{"cube"}, f.relevant,
                        std::set<std::string>{"robot", "lid1", "container1", "cube", "in1"}}) {
    std::size_t expect = 0;
    for (const auto& name : vocab) {
      auto it = f.task.predicates.find(name);
      if (it == f.task.predicates.end()) continue;
      std::size_t prod = 1;
      for (const auto& p : it->second.params) {
        std::size_t k = 0;
        for (const auto& e : o) k += f.task.entity_has_type(e, p.type) ? 1 : 0;
        prod *= k;
      }
      expect += prod;
    }
    CHECK(find_relevant_predicates(o, vocab, f.task).size() == expect);
  }
}

TEST_CASE("(c1) reference replay yields the open-container candidate") {
  Replay f("c1");
  auto r = f.run(c1_solution());
  REQUIRE(r.steps.size() == 8);
  CHECK(r.images.size() == 9);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].literal == Literal{{"closed", {"container1"}}, false});
  CHECK(r.candidates[0].step == 3);
  // The goal atom changes but is filtered.
  bool goal_changed = std::any_of(r.changes.begin(), r.changes.end(), [](const PredicateChange& c) {
    return c.literal.atom == Atom{"inside", {"container1", "cube"}};
  });
  CHECK(goal_changed);
  CHECK(r.candidates == recompute(f.task, r, f.sc.goal.literals));

  auto again = f.run(c1_solution());
  CHECK(again.changes == r.changes);
}

TEST_CASE("a bystander that is picked up and put back toggles and is filtered") {
  Replay probe("c1");
  Vec3 duck = probe.world.bounding_box("duck").base_center();
  Replay f("c1", {{"duck-home", duck}});
  f.sc.goal.observe.push_back("on");
  REQUIRE(f.relevant.count("duck"));
  std::vector<PlanStep> seq{
      {"navigate", {"robot", "home", "duck"}, {}},
      {"grasp", {"robot", "duck"}, {}},
      {"navigate", {"robot", "duck", "duck-home"}, {}},
      {"place", {"robot", "duck", "duck-home"}, {}},
  };
  auto tail = c1_solution();
  tail[0].args[1] = "duck-home";
  seq.insert(seq.end(), tail.begin(), tail.end());
  auto r = f.run(seq);
  const Atom on{"on", {"duck", "table"}};
  CHECK(std::count_if(r.changes.begin(), r.changes.end(),
                      [&](const PredicateChange& c) { return c.literal.atom == on; }) == 2);
  for (const auto& c : r.candidates) CHECK(c.literal.atom != on);
  CHECK(r.candidates == recompute(f.task, r, f.sc.goal.literals));
}

TEST_CASE("a single-action sequence has no candidates") {
  Replay f("a");
  auto r = f.run({{"navigate", {"robot", "home", "cube"}, {}}});
  CHECK(r.candidates.empty());
}

TEST_CASE("filters individually") {
  PredicateChange a{{{"closed", {"c"}}, false}, 1, {}, false};
  PredicateChange b{{{"inside", {"c", "x"}}, true}, 3, {}, false};
  PredicateChange c{{{"on", {"y", "t"}}, false}, 0, {}, false};
  PredicateChange c2{{{"on", {"y", "t"}}, true}, 2, {}, false};
  CHECK(filter_goals({a, b}, {{{"inside", {"c", "x"}}, true}}) == std::vector<PredicateChange>{a});
  CHECK(filter_last_action({a, b}, 3) == std::vector<PredicateChange>{a});
  CHECK(filter_toggling({a, c}, {a, c, c2}) == std::vector<PredicateChange>{a});
}

TEST_CASE("extension") {
  Replay f("c1");
  auto r = f.run(c1_solution());
  auto metas = [](const PlanningTask& t) {
    return std::count_if(t.actions.begin(), t.actions.end(),
                         [](const auto& kv) { return kv.second.is_meta(); });
  };
  REQUIRE(solve(f.task).status == PlanStatus::kUnsolvable);

  SUBCASE("no candidates: one meta-action for the whole sequence") {
    auto ext = extend_symbolic_description(f.task, r, {});
    CHECK(metas(ext) == 1);
    CHECK(ext.actions.at("meta-1").expansion.size() == 8);
    CHECK(solve(ext).status == PlanStatus::kSolved);
  }
  SUBCASE("open then insert") {
    auto ext = extend_symbolic_description(f.task, r, r.candidates);
    REQUIRE(metas(ext) == 2);
    const auto& open = ext.actions.at("meta-1");
    const auto& insert = ext.actions.at("meta-2");
    CHECK(open.expansion.size() == 4);
    CHECK(insert.expansion.size() == 4);
    CHECK(std::any_of(open.eff.begin(), open.eff.end(), [](const ParamLiteral& l) {
      return l.predicate == "closed" && !l.positive;
    }));
    CHECK(std::any_of(insert.pre.begin(), insert.pre.end(), [](const ParamLiteral& l) {
      return l.predicate == "closed" && !l.positive;
    }));
    CHECK(std::any_of(insert.eff.begin(), insert.eff.end(), [](const ParamLiteral& l) {
      return l.predicate == "inside" && l.positive;
    }));
    CHECK(ext.entity_has_type("cube", "item-sub-1"));

    // The extended task solves, and its plan reaches the goal in the world.
    auto plan = solve(ext);
    REQUIRE(plan.status == PlanStatus::kSolved);
    World w(f.sc.scene);
    sync_positions(w, ext);
    CHECK(execute(w, ext, plan.plan, f.sc.goal.literals).success);
    // Nothing but types, actions and entity typing grew.
    CHECK(ext.init == f.task.init);
    CHECK(ext.goal == f.task.goal);
    CHECK(ext.predicates == f.task.predicates);
  }
  SUBCASE("segment starts") {
    CHECK(segment_starts(8, {}) == std::vector<int>{0});
    CHECK(segment_starts(8, r.candidates) == std::vector<int>{0, 4});
    CHECK(next_meta_name(f.task) == "meta-1");
  }
}
