#pragma once

#include <algorithm>
#include <cmath>

namespace skillforge {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool operator==(const Vec3&) const = default;
};

inline double planar_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned box given by its min and max corners.
struct Box {
  Vec3 lo;
  Vec3 hi;

  static Box centered(const Vec3& base_center, const Vec3& size) {
    return {{base_center.x - size.x / 2, base_center.y - size.y / 2, base_center.z},
            {base_center.x + size.x / 2, base_center.y + size.y / 2, base_center.z + size.z}};
  }
  Vec3 size() const { return hi - lo; }
  Vec3 center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2, (lo.z + hi.z) / 2}; }
  Vec3 base_center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2, lo.z}; }
  Box translated(const Vec3& d) const { return {lo + d, hi + d}; }
  Box inflated(double xy, double z_up) const {
    return {{lo.x - xy, lo.y - xy, lo.z}, {hi.x + xy, hi.y + xy, hi.z + z_up}};
  }
  double volume() const {
    auto s = size();
    return s.x * s.y * s.z;
  }
  bool operator==(const Box&) const = default;
};

inline constexpr double kEps = 1e-6;

// Interiors intersect; touching faces do not count.
inline bool overlaps(const Box& a, const Box& b) {
  return a.lo.x < b.hi.x - kEps && b.lo.x < a.hi.x - kEps && a.lo.y < b.hi.y - kEps &&
         b.lo.y < a.hi.y - kEps && a.lo.z < b.hi.z - kEps && b.lo.z < a.hi.z - kEps;
}

inline bool footprints_overlap(const Box& a, const Box& b) {
  return a.lo.x < b.hi.x - kEps && b.lo.x < a.hi.x - kEps && a.lo.y < b.hi.y - kEps &&
         b.lo.y < a.hi.y - kEps;
}

inline bool contains(const Box& outer, const Box& inner) {
  return inner.lo.x >= outer.lo.x - kEps && inner.lo.y >= outer.lo.y - kEps &&
         inner.lo.z >= outer.lo.z - kEps && inner.hi.x <= outer.hi.x + kEps &&
         inner.hi.y <= outer.hi.y + kEps && inner.hi.z <= outer.hi.z + kEps;
}

inline bool contains_point(const Box& b, const Vec3& p) {
  return p.x >= b.lo.x - kEps && p.x <= b.hi.x + kEps && p.y >= b.lo.y - kEps &&
         p.y <= b.hi.y + kEps && p.z >= b.lo.z - kEps && p.z <= b.hi.z + kEps;
}

inline bool footprint_contains_point(const Box& b, double x, double y) {
  return x >= b.lo.x - kEps && x <= b.hi.x + kEps && y >= b.lo.y - kEps && y <= b.hi.y + kEps;
}

// Smallest Euclidean distance between two boxes (0 when they touch/overlap).
inline double box_distance(const Box& a, const Box& b) {
  auto gap = [](double alo, double ahi, double blo, double bhi) {
    return std::max({0.0, blo - ahi, alo - bhi});
  };
  double dx = gap(a.lo.x, a.hi.x, b.lo.x, b.hi.x);
  double dy = gap(a.lo.y, a.hi.y, b.lo.y, b.hi.y);
  double dz = gap(a.lo.z, a.hi.z, b.lo.z, b.hi.z);
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace skillforge
