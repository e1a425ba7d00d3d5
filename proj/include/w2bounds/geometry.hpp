#pragma once

#include <cmath>

namespace w2b {

/// A point or displacement in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
constexpr double norm_sq(Vec2 p) { return dot(p, p); }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }

}  // namespace w2b
