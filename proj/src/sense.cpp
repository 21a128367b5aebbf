#include "spibox/sense.hpp"

#include <algorithm>
#include <cmath>

#include "spibox/error.hpp"

namespace spibox {

int octant_of(Vec2 p) {
  if (p.x == 0.0 && p.y == 0.0) fail(ErrorKind::invalid_argument, "octant of a zero vector is undefined");
  const double deg = degrees(wrap_two_pi(std::atan2(p.y, p.x)));
  return std::min(static_cast<int>(std::floor(deg / 45.0)), 7) + 1;
}

double relative_bearing(const Pose& pose, Vec2 target) {
  const Vec2 d = target - pose.position;
  return wrap_two_pi(std::atan2(d.y, d.x) - pose.heading);
}

double scale_goal_angle(double bearing_radians) {
  return (degrees(wrap_two_pi(bearing_radians)) - 180.0) / 180.0;
}

StateVector encode_state(const Scenario& scenario, const Pose& pose) {
  StateVector sv;
  constexpr double eighth = std::numbers::pi / 4.0;
  for (int k = 0; k < 8; ++k) {
    const Sector sector{scenario.sensor_radius, k * eighth, eighth};
    bool hit = false;
    for (const Disc& o : scenario.obstacles) {
      const Disc local{rotate(o.center - pose.position, -pose.heading), o.radius};
      if (sector_touches_disc(sector, local)) {
        hit = true;
        break;
      }
    }
    for (std::size_t i = 0; !hit && i < scenario.walls.size(); ++i) {
      const Segment& w = scenario.walls[i];
      const Segment local{rotate(w.a - pose.position, -pose.heading), rotate(w.b - pose.position, -pose.heading)};
      hit = sector_touches_segment(sector, local);
    }
    sv.occupied[static_cast<std::size_t>(k)] = hit;
  }
  sv.goal_angle = scale_goal_angle(relative_bearing(pose, scenario.goal.center));
  return sv;
}

std::uint32_t state_count(int angle_bins) {
  require(angle_bins >= 1, "angle_bins must be at least 1");
  return 256u * static_cast<std::uint32_t>(angle_bins);
}

int angle_bin(double goal_angle, int angle_bins) {
  require(angle_bins >= 1, "angle_bins must be at least 1");
  const double t = (std::clamp(goal_angle, -1.0, 1.0) + 1.0) / 2.0;
  return std::min(static_cast<int>(std::floor(t * angle_bins)), angle_bins - 1);
}

DiscreteState discretize(const StateVector& sv, int angle_bins) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    if (sv.occupied[k]) mask |= 1u << k;
  }
  return {mask * static_cast<std::uint32_t>(angle_bins) +
          static_cast<std::uint32_t>(angle_bin(sv.goal_angle, angle_bins))};
}

}  // namespace spibox
