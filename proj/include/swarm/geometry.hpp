#pragma once

#include <cmath>
#include <string>

namespace swarm {

/// Planar position or displacement in world units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm_sq() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Vec2 a, Vec2 b) { return (b - a).norm(); }

/// Rotation by `angle` radians about the origin.
inline Vec2 rotated(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Closed axis-aligned box; the region of interest the demand profile lives on.
struct Region {
  Vec2 min;
  Vec2 max;

  Region() = default;
  /// Throws ConfigError unless min < max componentwise.
  Region(Vec2 lo, Vec2 hi);

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  Vec2 center() const { return 0.5 * (min + max); }

  /// Closed-set membership (boundary points are inside).
  bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool strictly_contains(Vec2 p) const {
    return p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y;
  }
  /// Distance from p to the nearest edge; negative outside.
  double inset_distance(Vec2 p) const;
  Region padded(double margin) const;

  friend bool operator==(const Region&, const Region&) = default;
};

struct UnitDirection {
  Vec2 direction;
  bool is_degenerate = false;
};

inline constexpr double kDegenerateEps = 1e-12;

/// Unit vector from a toward b. Points closer than eps give a zero vector flagged degenerate.
UnitDirection unit_toward(Vec2 a, Vec2 b, double eps = kDegenerateEps);

std::string to_string(Vec2 v);

}  // namespace swarm
