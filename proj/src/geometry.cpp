#include "spibox/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace spibox {

double point_segment_distance(Vec2 p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return norm(p - s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return norm(p - (s.a + t * d));
}

bool segments_intersect(const Segment& s, const Segment& t, double eps) {
  const Vec2 r = s.b - s.a;
  const Vec2 q = t.b - t.a;
  const double o1 = cross(r, t.a - s.a);
  const double o2 = cross(r, t.b - s.a);
  const double o3 = cross(q, s.a - t.a);
  const double o4 = cross(q, s.b - t.a);
  const bool proper = ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
                      ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
  if (proper) return true;
  // Touching, collinear or near-miss within eps.
  return point_segment_distance(t.a, s) <= eps || point_segment_distance(t.b, s) <= eps ||
         point_segment_distance(s.a, t) <= eps || point_segment_distance(s.b, t) <= eps;
}

bool square_touches_disc(const OrientedSquare& sq, const Disc& d, double eps) {
  const Vec2 c = sq.to_local(d.center);
  const double h = sq.side / 2.0;
  const Vec2 nearest{std::clamp(c.x, -h, h), std::clamp(c.y, -h, h)};
  return norm(c - nearest) <= d.radius + eps;
}

bool square_touches_segment(const OrientedSquare& sq, const Segment& s, double eps) {
  // Liang-Barsky clip of the local-frame segment against the closed square.
  const Vec2 a = sq.to_local(s.a);
  const Vec2 b = sq.to_local(s.b);
  const double h = sq.side / 2.0 + eps;
  const Vec2 d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  const std::array<double, 4> p{-d.x, d.x, -d.y, d.y};
  const std::array<double, 4> q{a.x + h, h - a.x, a.y + h, h - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

namespace {

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

bool within_wedge(const Sector& sec, Vec2 p, double eps) {
  return cross(unit(sec.start), p) >= -eps && cross(p, unit(sec.start + sec.sweep)) >= -eps;
}

std::array<Segment, 2> radial_edges(const Sector& sec) {
  return {Segment{{0, 0}, sec.radius * unit(sec.start)},
          Segment{{0, 0}, sec.radius * unit(sec.start + sec.sweep)}};
}

}  // namespace

bool Sector::contains(Vec2 p, double eps) const {
  if (norm(p) > radius + eps) return false;
  return within_wedge(*this, p, eps);
}

bool sector_touches_disc(const Sector& sec, const Disc& d, double eps) {
  if (sec.contains(d.center, eps)) return true;
  double dist = std::numeric_limits<double>::infinity();
  for (const Segment& e : radial_edges(sec)) dist = std::min(dist, point_segment_distance(d.center, e));
  if (within_wedge(sec, d.center, 0.0)) dist = std::min(dist, std::abs(norm(d.center) - sec.radius));
  return dist <= d.radius + eps;
}

bool sector_touches_segment(const Sector& sec, const Segment& s, double eps) {
  if (sec.contains(s.a, eps) || sec.contains(s.b, eps)) return true;
  for (const Segment& e : radial_edges(sec)) {
    if (segments_intersect(s, e, eps)) return true;
  }
  // Remaining case: the segment crosses (or grazes) the arc.
  if (point_segment_distance({0, 0}, s) > sec.radius + eps) return false;
  const Vec2 d = s.b - s.a;
  const double qa = dot(d, d);
  if (qa == 0.0) return false;
  const double qb = 2.0 * dot(s.a, d);
  const double qc = dot(s.a, s.a) - sec.radius * sec.radius;
  const double root = std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0));
  for (double t : {(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)}) {
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 p = s.a + t * d;
    if (std::abs(norm(p) - sec.radius) <= eps + 1e-9 * sec.radius && within_wedge(sec, p, eps)) {
      return true;
    }
  }
  return false;
}

}  // namespace spibox
