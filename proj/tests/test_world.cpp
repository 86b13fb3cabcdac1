#include <doctest.h>

#include <cmath>
#include <random>

#include "scenarios.hpp"
#include "world.hpp"

using namespace skillforge;

namespace {

World desk() { return World(SceneSpec::load(data_path("scenes/desk.json"))); }
World cupboard() { return World(SceneSpec::load(data_path("scenes/cupboard.json"))); }

double dist_xy(const World& w, const Vec3& p) {
  return std::hypot(p.x - w.state().robot_x, p.y - w.state().robot_y);
}

// Every solid box in the scene except those of `except`.
std::vector<Box> solids(const World& w, const std::string& except) {
  std::vector<Box> out;
  for (const auto& name : w.physical_entities()) {
    if (name == except) continue;
    for (const auto& b : w.solid_boxes(name)) out.push_back(b);
  }
  return out;
}

bool in_arena(const World& w, const Box& b) {
  return b.lo.x >= -1e-6 && b.lo.y >= -1e-6 && b.lo.z >= -1e-6 &&
         b.hi.x <= w.scene().arena_x + 1e-6 && b.hi.y <= w.scene().arena_y + 1e-6;
}

// Exhaustive scan of the arena grid for the closest free robot pose.
std::optional<std::pair<double, double>> grid_oracle(const World& w, const Vec3& target) {
  std::optional<std::pair<double, double>> best;
  double best_d = 1e9;
  const auto obstacles = solids(w, w.state().held);
  const int nx = static_cast<int>(std::lround(w.scene().arena_x / World::kGrid));
  const int ny = static_cast<int>(std::lround(w.scene().arena_y / World::kGrid));
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      double x = i * World::kGrid, y = j * World::kGrid;
      double d = std::hypot(x - target.x, y - target.y);
      if (d > w.scene().reach + 1e-6) continue;
      Box r = w.robot_box(x, y);
      if (!in_arena(w, r)) continue;
      bool free = true;
      for (const auto& o : obstacles) free = free && !overlaps(r, o);
      if (!free) continue;
      if (!best || d < best_d - 1e-12) {
        best = {x, y};
        best_d = d;
      }
    }
  }
  return best;
}

void run_c1_solution(World& w) {
  REQUIRE(w.navigate("lid1"));
  REQUIRE(w.grasp("lid1"));
  REQUIRE(w.navigate("aside1"));
  REQUIRE(w.place(w.position("aside1")));
  REQUIRE(w.navigate("cube"));
  REQUIRE(w.grasp("cube"));
  REQUIRE(w.navigate("in1"));
  REQUIRE(w.place(w.position("in1")));
}

}  // namespace

TEST_CASE("initial desk grounding") {
  World w = desk();
  CHECK(w.holds({"on", {"cube", "table"}}));
  CHECK(w.holds({"closed", {"container1"}}));
  CHECK(w.holds({"closed", {"container2"}}));
  CHECK(w.holds({"handempty", {}}));
  CHECK_FALSE(w.holds({"inside", {"container1", "cube"}}));
  CHECK(w.consistent());
}

TEST_CASE("navigate reaches entities and matches the grid oracle") {
  World w = desk();
  REQUIRE(w.navigate("cube"));
  CHECK(dist_xy(w, w.anchor_point("cube")) <= w.scene().reach + 1e-9);
  CHECK(w.holds({"near", {"robot", "cube"}}));
  CHECK_THROWS_AS(w.navigate("ghost"), Error);

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::vector<Vec3> targets;
  for (const auto& e : w.physical_entities()) targets.push_back(w.anchor_point(e));
  for (int i = 0; i < 40; ++i) targets.push_back({u(rng), u(rng), 0.5});
  for (const auto& t : targets) {
    auto got = w.nearest_free_pose(t);
    auto want = grid_oracle(w, t);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(got->first == doctest::Approx(want->first));
      CHECK(got->second == doctest::Approx(want->second));
    }
  }
}

TEST_CASE("navigate fails when the target is walled in") {
  SceneSpec s = SceneSpec::load(data_path("scenes/cupboard.json"));
  // A solid slab whose half-width exceeds the reach, around a buried point.
  auto block = [](std::string name, Vec3 pose, Vec3 size) {
    EntitySpec e;
    e.name = std::move(name);
    e.cls = EntityClass::kTable;
    e.pose = pose;
    e.size = size;
    return e;
  };
  s.entities = {block("slab", {3.0, 3.0, 0.0}, {1.9, 1.9, 1.0})};
  s.positions["buried"] = {3.0, 3.0, 0.5};
  World w(s);
  CHECK_FALSE(w.navigate("buried"));
  CHECK(w.state().anchor == "home");
}

TEST_CASE("grasp") {
  World w = desk();
  SUBCASE("out of reach") { CHECK_FALSE(w.grasp("cube")); }
  SUBCASE("while holding") {
    REQUIRE(w.navigate("cube"));
    REQUIRE(w.grasp("cube"));
    CHECK(w.holds({"in-gripper", {"cube"}}));
    CHECK_FALSE(w.holds({"on", {"cube", "table"}}));
    CHECK_FALSE(w.holds({"handempty", {}}));
    auto before = w.snapshot();
    CHECK_FALSE(w.grasp("duck"));
    CHECK(w.snapshot() == before);
  }
  SUBCASE("lid carried away opens the container") {
    REQUIRE(w.navigate("lid1"));
    REQUIRE(w.grasp("lid1"));
    REQUIRE(w.navigate("aside1"));
    REQUIRE(w.place(w.position("aside1")));
    CHECK_FALSE(w.holds({"closed", {"container1"}}));
    CHECK(w.holds({"closed", {"container2"}}));
  }
  SUBCASE("covered container blocks access") {
    run_c1_solution(w);
    CHECK(w.holds({"inside", {"container1", "cube"}}));
    REQUIRE(w.navigate("lid1"));
    REQUIRE(w.grasp("lid1"));
    REQUIRE(w.navigate("container1"));
    Vec3 c = w.bounding_box("container1").base_center();
    REQUIRE(w.place({c.x, c.y, 0.9}));
    CHECK(w.holds({"closed", {"container1"}}));
    REQUIRE(w.navigate("cube"));
    CHECK_FALSE(w.grasp("cube"));
  }
}

TEST_CASE("place") {
  SUBCASE("inside an open container") {
    World w = desk();
    run_c1_solution(w);
    CHECK(w.holds({"inside", {"container1", "cube"}}));
    CHECK(w.holds({"handempty", {}}));
    CHECK(w.consistent());
  }
  SUBCASE("collision with the cupboard body leaves the state unchanged") {
    World w = cupboard();
    REQUIRE(w.navigate("cube"));
    REQUIRE(w.grasp("cube"));
    REQUIRE(w.navigate("cupboard"));
    auto before = w.snapshot();
    CHECK_FALSE(w.place({2.0, 3.3, 0.3}));
    CHECK(w.snapshot() == before);
  }
  SUBCASE("a lid dropped over the aperture closes the container") {
    World w = desk();
    REQUIRE(w.navigate("lid1"));
    REQUIRE(w.grasp("lid1"));
    REQUIRE(w.navigate("aside1"));
    REQUIRE(w.place(w.position("aside1")));
    REQUIRE(w.grasp("lid1"));
    REQUIRE(w.navigate("container1"));
    Box cb = w.bounding_box("container1");
    // Slightly off-centre: the lid seats itself on the rim.
    REQUIRE(w.place({cb.base_center().x + 0.01, cb.base_center().y, 0.95}));
    CHECK(w.holds({"closed", {"container1"}}));
    CHECK(w.bounding_box("lid1").lo.z == doctest::Approx(cb.hi.z));
  }
  SUBCASE("empty gripper") {
    World w = desk();
    CHECK_FALSE(w.place({1.0, 1.0, 0.0}));
  }
}

TEST_CASE("move") {
  World w = desk();
  REQUIRE(w.navigate("lid1"));
  REQUIRE(w.grasp("lid1"));

  SUBCASE("zero displacement is the identity") {
    auto before = w.snapshot();
    CHECK(w.move({0, 0, 0}));
    CHECK(w.snapshot() == before);
  }
  SUBCASE("sliding the lid off opens the container") {
    CHECK(w.move({0.3, 0, 0}));
    CHECK_FALSE(w.holds({"closed", {"container1"}}));
    Box lid = w.bounding_box("lid1");
    Box cb = w.bounding_box("container1");
    CHECK(lid.lo.x >= cb.hi.x - 1e-9);
  }
  SUBCASE("steps are clipped") {
    Vec3 p0 = w.state().pose.at("lid1");
    CHECK(w.move({0, 0, 2.0}));
    CHECK(w.state().pose.at("lid1").z == doctest::Approx(p0.z + World::kMaxMoveStep));
  }
}

TEST_CASE("move through a container wall fails") {
  World w = desk();
  run_c1_solution(w);
  REQUIRE(w.navigate("cube"));
  REQUIRE(w.grasp("cube"));
  auto before = w.snapshot();
  CHECK_FALSE(w.move({0.2, 0, 0}));
  CHECK(w.snapshot() == before);
  CHECK(w.move({0, 0, 0.2}));
}

TEST_CASE("move agrees with a swept-box oracle") {
  World w = desk();
  REQUIRE(w.navigate("cube"));
  REQUIRE(w.grasp("cube"));
  REQUIRE(w.move({0, 0, 0.1}));
  const auto start = w.snapshot();
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int successes = 0;
  for (int i = 0; i < 300; ++i) {
    w.restore(start);
    Vec3 d{u(rng), u(rng), u(rng)};
    if (d.norm() > World::kMaxMoveStep) d = d * (World::kMaxMoveStep / d.norm());

    Box from = w.bounding_box("cube");
    Box to = from.translated(d);
    Box swept{{std::min(from.lo.x, to.lo.x), std::min(from.lo.y, to.lo.y),
               std::min(from.lo.z, to.lo.z)},
              {std::max(from.hi.x, to.hi.x), std::max(from.hi.y, to.hi.y),
               std::max(from.hi.z, to.hi.z)}};
    bool expect = in_arena(w, swept);
    for (const auto& o : solids(w, "cube")) expect = expect && !overlaps(swept, o);
    expect = expect && !overlaps(swept, w.robot_box(w.state().robot_x, w.state().robot_y));
    expect = expect && std::hypot(to.center().x - w.state().robot_x,
                                  to.center().y - w.state().robot_y) <= w.scene().reach + 1e-6;

    bool got = w.move(d);
    CHECK(got == expect);
    successes += got;
    if (!got) CHECK(w.snapshot() == start);
  }
  CHECK(successes > 0);
  CHECK(successes < 300);
}

TEST_CASE("snapshots form a tree") {
  World w = desk();
  const auto root = w.snapshot();
  REQUIRE(w.navigate("cube"));
  REQUIRE(w.grasp("cube"));
  const auto left = w.snapshot();
  w.restore(root);
  REQUIRE(w.navigate("lid1"));
  REQUIRE(w.grasp("lid1"));
  const auto right = w.snapshot();

  w.restore(left);
  CHECK(w.snapshot() == left);
  CHECK(w.holds({"in-gripper", {"cube"}}));
  w.restore(right);
  CHECK(w.holds({"in-gripper", {"lid1"}}));
  w.restore(root);
  CHECK(w.snapshot() == root);
  CHECK(w.holds({"closed", {"container1"}}));

  // Replaying from a restored snapshot is deterministic.
  REQUIRE(w.navigate("cube"));
  REQUIRE(w.grasp("cube"));
  CHECK(w.snapshot() == left);
}

TEST_CASE("skill calls are counted, including failures") {
  World w = desk();
  w.reset_counter();
  w.grasp("cube");
  w.navigate("cube");
  w.reject();
  CHECK(w.skill_calls() == 3);
}
