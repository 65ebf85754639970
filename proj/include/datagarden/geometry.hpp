#pragma once

namespace datagarden {

/// Scene-space point. The ground is the x/z plane; y is up.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

/// Ground rectangle [0, width] x [0, depth] on the x/z plane.
struct Bounds {
  double width = 0.0;
  double depth = 0.0;

  bool contains(Vec3 p) const {
    return p.x >= 0.0 && p.x <= width && p.z >= 0.0 && p.z <= depth && p.y == 0.0;
  }

  bool operator==(const Bounds&) const = default;
};

}  // namespace datagarden
