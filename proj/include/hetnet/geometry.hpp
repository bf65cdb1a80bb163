#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hetnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline Vec2 unit(Vec2 v) {
  const double n = v.norm();
  return n > 0.0 ? Vec2{v.x / n, v.y / n} : Vec2{1.0, 0.0};
}

/// Angle in degrees between two direction vectors, in [0, 180].
inline double angle_between_deg(Vec2 a, Vec2 b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
  bool degenerate() const { return !(width() > 0.0 && height() > 0.0); }

  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  Vec2 clamp(Vec2 p) const {
    return {std::clamp(p.x, min_x, max_x), std::clamp(p.y, min_y, max_y)};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace hetnet
