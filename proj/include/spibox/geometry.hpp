#pragma once

#include <cmath>
#include <numbers>

namespace spibox {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Counter-clockwise rotation by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Maps any angle onto [0, 2π).
inline double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

inline double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }
inline double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Disc {
  Vec2 center;
  double radius = 0.0;
};

/// Square of side `side` centered at `center`, rotated by `heading`.
struct OrientedSquare {
  Vec2 center;
  double heading = 0.0;
  double side = 0.0;

  Vec2 to_local(Vec2 world) const { return rotate(world - center, -heading); }
};

double point_segment_distance(Vec2 p, const Segment& s);

/// Closed test: touching endpoints or collinear overlap count as intersecting.
bool segments_intersect(const Segment& s, const Segment& t, double eps = 1e-9);

/// Closed contact between a filled oriented square and a disc.
bool square_touches_disc(const OrientedSquare& sq, const Disc& d, double eps = 1e-9);

/// Closed contact between a filled oriented square and a segment.
bool square_touches_segment(const OrientedSquare& sq, const Segment& s, double eps = 1e-9);

/// Closed circular sector centered at the origin: radius `radius`, polar angle
/// in [start, start + sweep], sweep < π.
struct Sector {
  double radius = 0.0;
  double start = 0.0;
  double sweep = 0.0;

  bool contains(Vec2 p, double eps = 1e-9) const;
};

bool sector_touches_disc(const Sector& sec, const Disc& d, double eps = 1e-9);
bool sector_touches_segment(const Sector& sec, const Segment& s, double eps = 1e-9);

}  // namespace spibox
