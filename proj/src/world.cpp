#include "world.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace skillforge {

using nlohmann::json;

const char* to_string(EntityClass c) {
  switch (c) {
    case EntityClass::kTable: return "table";
    case EntityClass::kCupboard: return "cupboard";
    case EntityClass::kShelf: return "shelf";
    case EntityClass::kContainer: return "container";
    case EntityClass::kLid: return "lid";
    case EntityClass::kItem: return "item";
  }
  return "item";
}

EntityClass entity_class_from_string(const std::string& s) {
  for (auto c : {EntityClass::kTable, EntityClass::kCupboard, EntityClass::kShelf,
                 EntityClass::kContainer, EntityClass::kLid, EntityClass::kItem}) {
    if (s == to_string(c)) return c;
  }
  throw Error(ErrorCode::kInvalidTask, "unknown entity class '" + s + "'");
}

const EntitySpec* SceneSpec::find(const std::string& name) const {
  for (const auto& e : entities) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

Vec3 vec_of(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3) {
    throw Error(ErrorCode::kInvalidTask, "expected a 2- or 3-element coordinate array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
}

json json_of(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

SceneSpec SceneSpec::from_json_text(const std::string& text) {
  SceneSpec s;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSyntax, std::string("scene: ") + e.what());
  }
  try {
    s.reach = j.value("reach", s.reach);
    if (j.contains("arena")) {
      s.arena_x = j["arena"].at(0).get<double>();
      s.arena_y = j["arena"].at(1).get<double>();
    }
    if (j.contains("robot")) {
      const auto& r = j["robot"];
      s.robot = r.value("name", s.robot);
      if (r.contains("xy")) {
        s.robot_x = r["xy"].at(0).get<double>();
        s.robot_y = r["xy"].at(1).get<double>();
      }
      if (r.contains("size")) s.robot_size = vec_of(r["size"]);
      s.robot_anchor = r.value("anchor", s.robot_anchor);
    }
    const json entities = j.value("entities", json::array());
    for (const auto& e : entities) {
      EntitySpec spec;
      spec.name = e.at("name").get<std::string>();
      spec.cls = entity_class_from_string(e.at("class").get<std::string>());
      spec.size = vec_of(e.at("size"));
      spec.pose = vec_of(e.at("pose"));
      if (e.value("orientation", std::string("upright")) == "lying") {
        spec.orientation = Orientation::kLying;
      }
      spec.fits = e.value("fits", std::string());
      spec.wall = e.value("wall", spec.wall);
      spec.base = e.value("base", spec.base);
      spec.gap = e.value("gap", spec.gap);
      s.entities.push_back(spec);
    }
    const json positions = j.value("positions", json::object());
    for (const auto& [name, p] : positions.items()) {
      s.positions[name] = vec_of(p);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidTask, std::string("scene: ") + e.what());
  }
  return s;
}

SceneSpec SceneSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string SceneSpec::to_json_text() const {
  json j;
  j["reach"] = reach;
  j["arena"] = json::array({arena_x, arena_y});
  j["robot"] = {{"name", robot},
                {"xy", json::array({robot_x, robot_y})},
                {"size", json_of(robot_size)},
                {"anchor", robot_anchor}};
  j["entities"] = json::array();
  for (const auto& e : entities) {
    json o = {{"name", e.name},
              {"class", to_string(e.cls)},
              {"size", json_of(e.size)},
              {"pose", json_of(e.pose)}};
    if (e.orientation == Orientation::kLying) o["orientation"] = "lying";
    if (!e.fits.empty()) o["fits"] = e.fits;
    if (e.cls == EntityClass::kContainer || e.cls == EntityClass::kShelf) o["wall"] = e.wall;
    if (e.cls == EntityClass::kShelf) {
      o["base"] = e.base;
      o["gap"] = e.gap;
    }
    j["entities"].push_back(o);
  }
  j["positions"] = json::object();
  for (const auto& [name, p] : positions) j["positions"][name] = json_of(p);
  return j.dump(2);
}

World::World(SceneSpec scene) : scene_(std::move(scene)) {
  for (const auto& e : scene_.entities) {
    if (!specs_.emplace(e.name, e).second) {
      throw Error(ErrorCode::kInvalidTask, "duplicate entity " + e.name);
    }
    state_.pose[e.name] = e.pose;
    state_.orientation[e.name] = e.orientation;
  }
  for (const auto& [name, p] : scene_.positions) {
    if (specs_.count(name)) throw Error(ErrorCode::kInvalidTask, "duplicate entity " + name);
    positions_[name] = p;
  }
  if (!positions_.count(scene_.robot_anchor) && !specs_.count(scene_.robot_anchor)) {
    positions_[scene_.robot_anchor] = {scene_.robot_x, scene_.robot_y, 0.0};
  }
  state_.robot_x = scene_.robot_x;
  state_.robot_y = scene_.robot_y;
  state_.anchor = scene_.robot_anchor;
  std::string why;
  if (!consistent(&why)) throw Error(ErrorCode::kInvalidTask, "inconsistent scene: " + why);
}

const Vec3& World::position(const std::string& name) const {
  auto it = positions_.find(name);
  if (it == positions_.end()) throw Error(ErrorCode::kUnknownEntity, "unknown position " + name);
  return it->second;
}

bool World::has_entity(const std::string& name) const {
  return name == scene_.robot || specs_.count(name) || positions_.count(name);
}

const EntitySpec& World::spec(const std::string& name) const {
  auto it = specs_.find(name);
  if (it == specs_.end()) throw Error(ErrorCode::kUnknownEntity, "unknown entity " + name);
  return it->second;
}

std::vector<std::string> World::physical_entities() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : specs_) out.push_back(name);
  return out;
}

Vec3 World::oriented_size(const std::string& entity) const {
  return oriented_extent(spec(entity).size, state_.orientation.at(entity));
}

Box World::bounding_box(const std::string& entity) const {
  return Box::centered(state_.pose.at(entity), oriented_size(entity));
}

std::vector<Box> World::solid_boxes(const std::string& entity) const {
  const auto& s = spec(entity);
  Box b = bounding_box(entity);
  switch (s.cls) {
    case EntityClass::kContainer: {
      double w = s.wall;
      return {
          {b.lo, {b.hi.x, b.hi.y, b.lo.z + w}},                                      // floor
          {{b.lo.x, b.lo.y, b.lo.z + w}, {b.lo.x + w, b.hi.y, b.hi.z}},              // x-
          {{b.hi.x - w, b.lo.y, b.lo.z + w}, {b.hi.x, b.hi.y, b.hi.z}},              // x+
          {{b.lo.x + w, b.lo.y, b.lo.z + w}, {b.hi.x - w, b.lo.y + w, b.hi.z}},      // y-
          {{b.lo.x + w, b.hi.y - w, b.lo.z + w}, {b.hi.x - w, b.hi.y, b.hi.z}},      // y+
      };
    }
    case EntityClass::kShelf: {
      double z1 = b.lo.z + s.base;
      double z2 = z1 + s.gap;
      return {
          {b.lo, {b.hi.x, b.hi.y, z1}},
          {{b.lo.x, b.lo.y, z2}, b.hi},
          {{b.lo.x, b.hi.y - s.wall, z1}, {b.hi.x, b.hi.y, z2}},
      };
    }
    default:
      return {b};
  }
}

std::optional<Box> World::interior(const std::string& entity) const {
  const auto& s = spec(entity);
  Box b = bounding_box(entity);
  if (s.cls == EntityClass::kContainer) {
    double w = s.wall;
    return Box{{b.lo.x + w, b.lo.y + w, b.lo.z + w}, {b.hi.x - w, b.hi.y - w, b.hi.z}};
  }
  if (s.cls == EntityClass::kShelf) {
    double z1 = b.lo.z + s.base;
    return Box{{b.lo.x, b.lo.y, z1}, {b.hi.x, b.hi.y - s.wall, z1 + s.gap}};
  }
  return std::nullopt;
}

Box World::robot_box(double x, double y) const {
  return Box::centered({x, y, 0.0}, scene_.robot_size);
}

Vec3 World::anchor_point(const std::string& entity) const {
  if (entity == scene_.robot) return {state_.robot_x, state_.robot_y, 0.0};
  if (auto it = positions_.find(entity); it != positions_.end()) return it->second;
  return bounding_box(entity).center();
}

bool World::covered(const std::string& container) const {
  const auto& c = spec(container);
  if (c.cls != EntityClass::kContainer) return false;
  Box cb = bounding_box(container);
  for (const auto& [name, s] : specs_) {
    if (s.cls != EntityClass::kLid) continue;
    Box lb = bounding_box(name);
    if (std::abs(lb.lo.z - cb.hi.z) <= kEps && contains(Box{{lb.lo.x, lb.lo.y, 0}, {lb.hi.x, lb.hi.y, 1}},
                                                        Box{{cb.lo.x, cb.lo.y, 0}, {cb.hi.x, cb.hi.y, 1}})) {
      return true;
    }
  }
  return false;
}

bool World::enclosed(const std::string& object) const {
  Vec3 c = bounding_box(object).center();
  for (const auto& [name, s] : specs_) {
    if (s.cls != EntityClass::kContainer || name == object) continue;
    if (contains_point(*interior(name), c) && covered(name)) return true;
  }
  return false;
}

std::vector<std::string> World::resting_on(const std::string& entity) const {
  std::vector<std::string> out;
  auto boxes = solid_boxes(entity);
  for (const auto& [name, s] : specs_) {
    if (name == entity || name == state_.held) continue;
    Box b = bounding_box(name);
    for (const auto& sb : boxes) {
      if (std::abs(b.lo.z - sb.hi.z) <= kEps && footprints_overlap(b, sb)) {
        out.push_back(name);
        break;
      }
    }
  }
  return out;
}

std::vector<std::pair<std::string, Box>> World::obstacles(const std::string& except,
                                                          bool include_robot) const {
  std::vector<std::pair<std::string, Box>> out;
  for (const auto& [name, _] : specs_) {
    if (name == except) continue;
    for (const auto& b : solid_boxes(name)) out.emplace_back(name, b);
  }
  if (include_robot) out.emplace_back(scene_.robot, robot_box(state_.robot_x, state_.robot_y));
  return out;
}

bool World::box_free(const Box& b, const std::string& except, bool include_robot) const {
  if (b.lo.x < -kEps || b.lo.y < -kEps || b.lo.z < -kEps || b.hi.x > scene_.arena_x + kEps ||
      b.hi.y > scene_.arena_y + kEps) {
    return false;
  }
  for (const auto& [_, o] : obstacles(except, include_robot)) {
    if (overlaps(b, o)) return false;
  }
  return true;
}

bool World::robot_pose_free(double x, double y) const {
  return box_free(robot_box(x, y), state_.held, false);
}

std::optional<std::pair<double, double>> World::nearest_free_pose(const Vec3& target) const {
  const double r = scene_.reach;
  const long i0 = static_cast<long>(std::floor((target.x - r) / kGrid));
  const long i1 = static_cast<long>(std::ceil((target.x + r) / kGrid));
  const long j0 = static_cast<long>(std::floor((target.y - r) / kGrid));
  const long j1 = static_cast<long>(std::ceil((target.y + r) / kGrid));
  std::optional<std::pair<double, double>> best;
  double best_d = 0.0;
  for (long i = i0; i <= i1; ++i) {
    for (long j = j0; j <= j1; ++j) {
      double x = static_cast<double>(i) * kGrid;
      double y = static_cast<double>(j) * kGrid;
      double d = std::hypot(x - target.x, y - target.y);
      if (d > r + kEps) continue;
      // Loop order visits x, then y, ascending: strict comparison keeps the
      // lexicographically smallest pose among equal distances.
      if (best && d >= best_d - 1e-12) continue;
      if (!robot_pose_free(x, y)) continue;
      best = {x, y};
      best_d = d;
    }
  }
  return best;
}

bool World::navigate(const std::string& target) {
  ++skill_calls_;
  if (!has_entity(target)) throw Error(ErrorCode::kUnknownEntity, "unknown entity " + target);
  if (target == state_.held || target == scene_.robot) {
    state_.anchor = target;
    return true;
  }
  auto pose = nearest_free_pose(anchor_point(target));
  if (!pose) return false;
  state_.robot_x = pose->first;
  state_.robot_y = pose->second;
  state_.anchor = target;
  return true;
}

bool World::grasp(const std::string& object) {
  ++skill_calls_;
  const auto& s = spec(object);
  if (!state_.held.empty()) return false;
  if (s.cls != EntityClass::kItem && s.cls != EntityClass::kLid) return false;
  Vec3 c = bounding_box(object).center();
  if (std::hypot(c.x - state_.robot_x, c.y - state_.robot_y) > scene_.reach + kEps) return false;
  if (enclosed(object)) return false;
  if (!resting_on(object).empty()) return false;
  state_.held = object;
  return true;
}


bool World::place(const Vec3& release, std::optional<Orientation> orientation) {
  ++skill_calls_;
  if (state_.held.empty()) return false;
  const std::string obj = state_.held;
  const auto& s = spec(obj);
  if (std::hypot(release.x - state_.robot_x, release.y - state_.robot_y) > scene_.reach + kEps) {
    return false;
  }
  Orientation o = s.cls == EntityClass::kItem ? orientation.value_or(Orientation::kUpright)
                                              : Orientation::kUpright;
  Vec3 size = o == Orientation::kLying ? Vec3{s.size.z, s.size.y, s.size.x} : s.size;
  Box b = Box::centered(release, size);
  if (!box_free(b, obj, true)) return false;

  // Drop vertically onto the highest surface below the footprint.
  double support = 0.0;
  std::vector<std::string> supporters;
  for (const auto& [name, ob] : obstacles(obj, true)) {
    if (!footprints_overlap(b, ob) || ob.hi.z > b.lo.z + kEps) continue;
    if (ob.hi.z > support + kEps) {
      support = ob.hi.z;
      supporters.clear();
    }
    if (std::abs(ob.hi.z - support) <= kEps) supporters.push_back(name);
  }
  Box dropped = b.translated({0, 0, support - b.lo.z});
  Vec3 center = dropped.center();

  bool stable = supporters.empty();  // the floor
  for (const auto& name : supporters) {
    if (name == scene_.robot) return false;
    const auto& sup = spec(name);
    Box outer = bounding_box(name);
    if (s.cls == EntityClass::kLid && sup.cls == EntityClass::kContainer &&
        std::abs(outer.hi.z - support) <= kEps) {
      // Lid on a rim: the matching lid seats itself, any other one slides off.
      if (s.fits != name) return false;
      Box seated = Box::centered({outer.base_center().x, outer.base_center().y, outer.hi.z}, size);
      if (!box_free(seated, obj, true)) return false;
      state_.pose[obj] = seated.base_center();
      state_.orientation[obj] = o;
      state_.held.clear();
      return true;
    }
    if (footprint_contains_point(outer, center.x, center.y)) stable = true;
  }
  if (!stable) return false;
  for (const auto& [name, c] : specs_) {
    if (c.cls == EntityClass::kContainer && contains_point(*interior(name), center) && covered(name)) {
      return false;
    }
  }
  state_.pose[obj] = dropped.base_center();
  state_.orientation[obj] = o;
  state_.held.clear();
  return true;
}

bool World::move(const Vec3& displacement) {
  ++skill_calls_;
  if (state_.held.empty()) return false;
  Vec3 d = displacement;
  double n = d.norm();
  if (n > kMaxMoveStep) d = d * (kMaxMoveStep / n);
  if (n <= 0.0) return true;
  const std::string obj = state_.held;
  Box from = bounding_box(obj);
  Box to = from.translated(d);
  Box swept{{std::min(from.lo.x, to.lo.x), std::min(from.lo.y, to.lo.y), std::min(from.lo.z, to.lo.z)},
            {std::max(from.hi.x, to.hi.x), std::max(from.hi.y, to.hi.y), std::max(from.hi.z, to.hi.z)}};
  if (!box_free(swept, obj, true)) return false;
  Vec3 c = to.center();
  if (std::hypot(c.x - state_.robot_x, c.y - state_.robot_y) > scene_.reach + kEps) return false;
  state_.pose[obj] = state_.pose[obj] + d;
  return true;
}

bool World::holds(const Atom& atom) const {
  const auto& p = atom.predicate;
  const auto& a = atom.args;
  auto movable = [&](const std::string& e) {
    auto it = specs_.find(e);
    return it != specs_.end() &&
           (it->second.cls == EntityClass::kItem || it->second.cls == EntityClass::kLid);
  };
  if (p == "handempty") return state_.held.empty();
  if (p == "in-gripper") return a.size() == 1 && state_.held == a[0];
  if (p == "near") return a.size() == 2 && a[0] == scene_.robot && state_.anchor == a[1];
  if (p == "closed") return a.size() == 1 && specs_.count(a[0]) && covered(a[0]);
  if (p == "on") {
    if (a.size() != 2 || !movable(a[0]) || !specs_.count(a[1]) || a[0] == a[1]) return false;
    if (state_.held == a[0]) return false;
    Box ob = bounding_box(a[0]);
    Vec3 c = ob.center();
    if (!footprint_contains_point(bounding_box(a[1]), c.x, c.y)) return false;
    for (const auto& sb : solid_boxes(a[1])) {
      if (std::abs(ob.lo.z - sb.hi.z) <= kEps && footprints_overlap(ob, sb)) return true;
    }
    return false;
  }
  if (p == "inside") {
    if (a.size() != 2 || !specs_.count(a[0]) || !movable(a[1]) || state_.held == a[1]) return false;
    auto in = interior(a[0]);
    return in && contains(*in, bounding_box(a[1]));
  }
  if (p == "at-region") {
    if (a.size() != 2 || !movable(a[0]) || state_.held == a[0] || !positions_.count(a[1])) {
      return false;
    }
    return planar_distance(bounding_box(a[0]).base_center(), positions_.at(a[1])) <=
           kRegionRadius + kEps;
  }
  return false;
}

SymbolicState World::ground(const std::vector<std::string>& predicates, const PlanningTask& task,
                            const std::set<std::string>& entities) const {
  SymbolicState out;
  for (const auto& name : predicates) {
    auto it = task.predicates.find(name);
    if (it == task.predicates.end()) continue;
    const auto& params = it->second.params;
    std::vector<std::vector<std::string>> cands;
    for (const auto& prm : params) {
      std::vector<std::string> c;
      for (const auto& e : entities) {
        if (task.entity_has_type(e, prm.type)) c.push_back(e);
      }
      cands.push_back(std::move(c));
    }
    Atom atom{name, std::vector<std::string>(params.size())};
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == params.size()) {
        if (holds(atom)) out.insert(atom);
        return;
      }
      for (const auto& e : cands[i]) {
        atom.args[i] = e;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

bool World::consistent(std::string* why) const {
  std::vector<std::pair<std::string, Box>> all;
  for (const auto& [name, _] : specs_) {
    Box bb = bounding_box(name);
    if (bb.lo.x < -kEps || bb.lo.y < -kEps || bb.lo.z < -kEps || bb.hi.x > scene_.arena_x + kEps ||
        bb.hi.y > scene_.arena_y + kEps) {
      if (why) *why = name + " leaves the arena";
      return false;
    }
    if (name == state_.held) continue;
    for (const auto& b : solid_boxes(name)) all.emplace_back(name, b);
  }
  all.emplace_back(scene_.robot, robot_box(state_.robot_x, state_.robot_y));
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].first != all[j].first && overlaps(all[i].second, all[j].second)) {
        if (why) *why = all[i].first + " overlaps " + all[j].first;
        return false;
      }
    }
  }
  return true;
}

}  // namespace skillforge
