#pragma once

#include <cmath>

namespace riso {

/// Cartesian 3-vector in the workspace frame (meters, or m/s for velocities).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr double dot(const Vec3 &a, const Vec3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr double squared_norm(const Vec3 &v) { return dot(v, v); }
inline double norm(const Vec3 &v) { return std::sqrt(squared_norm(v)); }
inline double planar_distance(const Vec3 &a, const Vec3 &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}
inline bool is_finite(const Vec3 &v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Scales `v` down so that its norm does not exceed `limit`. Direction is kept.
inline Vec3 clamp_norm(const Vec3 &v, double limit) {
  const double n = norm(v);
  if (n <= limit || n == 0.0) return v;
  return v * (limit / n);
}

/// Position-only pose; grasp frames carry no orientation (pads stay parallel to
/// the table).
using Pose = Vec3;

/// Axis-aligned box.
struct Box {
  Vec3 min;
  Vec3 max;

  bool contains(const Vec3 &p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  bool contains_xy(const Vec3 &p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  Vec3 clamp(const Vec3 &p) const;
  Vec3 center() const { return (min + max) * 0.5; }
};

inline Vec3 Box::clamp(const Vec3 &p) const {
  auto c = [](double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); };
  return {c(p.x, min.x, max.x), c(p.y, min.y, max.y), c(p.z, min.z, max.z)};
}

}  // namespace riso
