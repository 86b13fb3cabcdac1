#pragma once

// Deterministic 2.5-D kinematic rearrangement world: axis-aligned boxes,
// a teleporting mobile robot with a single gripper, lidded containers, a
// shelf with a low compartment, and predicate grounding.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symbolic.hpp"

namespace skillforge {

enum class EntityClass { kTable, kCupboard, kShelf, kContainer, kLid, kItem };

const char* to_string(EntityClass c);
EntityClass entity_class_from_string(const std::string& s);

struct EntitySpec {
  std::string name;
  EntityClass cls = EntityClass::kItem;
  Vec3 size;  // upright extents
  Vec3 pose;  // base center
  Orientation orientation = Orientation::kUpright;
  std::string fits;   // lid: the container it closes
  double wall = 0.02;  // container walls/floor, shelf back plate
  double base = 0.3;   // shelf: height of the lower slab
  double gap = 0.2;    // shelf: compartment height
};

struct SceneSpec {
  double reach = 0.8;
  double arena_x = 4.0;
  double arena_y = 4.0;
  std::string robot = "robot";
  Vec3 robot_size{0.4, 0.4, 0.5};
  double robot_x = 0.6;
  double robot_y = 0.6;
  std::string robot_anchor = "home";
  std::vector<EntitySpec> entities;
  std::map<std::string, Vec3> positions;  // named positions

  const EntitySpec* find(const std::string& name) const;
  static SceneSpec from_json_text(const std::string& text);
  static SceneSpec load(const std::string& path);
  std::string to_json_text() const;
};

struct WorldState {
  std::map<std::string, Vec3> pose;  // base centers of movable entities
  std::map<std::string, Orientation> orientation;
  std::string held;  // empty when the gripper is empty
  double robot_x = 0.0;
  double robot_y = 0.0;
  std::string anchor;  // entity the robot last navigated to

  bool operator==(const WorldState&) const = default;
};

// Extents of a box of upright size `size` in the given orientation; lying
// rotates the vertical axis onto x.
inline Vec3 oriented_extent(const Vec3& size, Orientation o) {
  return o == Orientation::kLying ? Vec3{size.z, size.y, size.x} : size;
}

class World {
 public:
  explicit World(SceneSpec scene);

  const SceneSpec& scene() const { return scene_; }
  const WorldState& state() const { return state_; }
  WorldState snapshot() const { return state_; }
  void restore(const WorldState& s) { state_ = s; }

  // Position samples and named positions share one registry.
  void set_position(const std::string& name, const Vec3& p) { positions_[name] = p; }
  bool has_position(const std::string& name) const { return positions_.count(name) > 0; }
  const Vec3& position(const std::string& name) const;
  const std::map<std::string, Vec3>& positions() const { return positions_; }

  bool has_entity(const std::string& name) const;
  bool is_physical(const std::string& name) const { return specs_.count(name) > 0; }
  const EntitySpec& spec(const std::string& name) const;
  std::vector<std::string> physical_entities() const;

  // Skills. Each returns success; failures leave the state unchanged.
  bool navigate(const std::string& target);
  bool grasp(const std::string& object);
  bool place(const Vec3& release, std::optional<Orientation> orientation = std::nullopt);
  bool move(const Vec3& displacement);

  std::uint64_t skill_calls() const { return skill_calls_; }
  // Counts a skill call whose arguments the world cannot interpret.
  bool reject() {
    ++skill_calls_;
    return false;
  }
  void reset_counter() { skill_calls_ = 0; }

  // Geometry queries.
  Box bounding_box(const std::string& entity) const;
  std::vector<Box> solid_boxes(const std::string& entity) const;
  std::optional<Box> interior(const std::string& entity) const;
  Box robot_box(double x, double y) const;
  Vec3 anchor_point(const std::string& entity) const;
  bool covered(const std::string& container) const;
  bool enclosed(const std::string& object) const;
  std::vector<std::string> resting_on(const std::string& entity) const;

  // Nearest collision-free robot pose within reach of the point, searched
  // on a 0.05 m grid; ties broken by (distance, x, y).
  std::optional<std::pair<double, double>> nearest_free_pose(const Vec3& target) const;
  bool robot_pose_free(double x, double y) const;

  // Predicates, over the given entities only.
  bool holds(const Atom& atom) const;
  SymbolicState ground(const std::vector<std::string>& predicates,
                       const PlanningTask& task, const std::set<std::string>& entities) const;

  // True when every physical entity is inside the arena and no two solid
  // boxes of different entities overlap (the held entity is exempt).
  bool consistent(std::string* why = nullptr) const;

  static constexpr double kGrid = 0.05;
  static constexpr double kMaxMoveStep = 0.5;
  static constexpr double kRegionRadius = 0.1;

 private:
  Vec3 oriented_size(const std::string& entity) const;
  std::vector<std::pair<std::string, Box>> obstacles(const std::string& except,
                                                     bool include_robot) const;
  bool box_free(const Box& b, const std::string& except, bool include_robot) const;

  SceneSpec scene_;
  std::map<std::string, EntitySpec> specs_;
  std::map<std::string, Vec3> positions_;
  WorldState state_;
  std::uint64_t skill_calls_ = 0;
};

}  // namespace skillforge
