#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace partlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product of (a, 0) and (b, 0).
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  if (n == 0.0) {
    throw std::invalid_argument("normalized: zero-length vector");
  }
  return {v.x / n, v.y / n};
}

/// Axis-aligned rectangle, min <= max componentwise.
struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  Vec2 center() const { return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5}; }
  bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

/// Signed angle a in (-pi, pi] such that rotating v counter-clockwise by a
/// aligns it with the +Y axis. Exactly opposite vectors map to +pi.
inline double angle_to_y(Vec2 v) {
  if (v.x == 0.0 && v.y == 0.0) {
    throw std::invalid_argument("angle_to_y: zero-length vector");
  }
  double a = std::numbers::pi / 2.0 - std::atan2(v.y, v.x);
  if (a > std::numbers::pi) {
    a -= 2.0 * std::numbers::pi;
  }
  return a;
}

/// Counter-clockwise rotation about the origin.
inline Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {p.x * c - p.y * s, p.x * s + p.y * c};
}

enum class Side { LowerOrEqual, Greater };

/// Oriented bisection line through `origin` along unit vector `direction`.
struct Cut {
  Vec2 origin;
  Vec2 direction;
};

/// Points exactly on the line count as LowerOrEqual.
inline Side side_of(const Cut& cut, Vec2 p) {
  return cross(cut.direction, p - cut.origin) >= 0.0 ? Side::LowerOrEqual
                                                     : Side::Greater;
}

}  // namespace partlab
