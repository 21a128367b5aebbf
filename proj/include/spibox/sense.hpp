#pragma once

#include <array>
#include <cstdint>

#include "spibox/geometry.hpp"
#include "spibox/scenario.hpp"
#include "spibox/world.hpp"

namespace spibox {

/// Eight box-frame octant occupancy bits plus the goal bearing scaled to [-1, 1).
struct StateVector {
  std::array<bool, 8> occupied{};
  double goal_angle = 0.0;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

struct DiscreteState {
  std::uint32_t index = 0;
};

inline constexpr int kDefaultAngleBins = 8;

/// 1-based octant of a nonzero box-frame vector; octant k spans
/// [(k-1)·45°, k·45°) counter-clockwise from the box x-axis.
int octant_of(Vec2 relative_point);

/// Bearing of `target` from the box center, relative to the box heading, in [0, 2π).
double relative_bearing(const Pose& pose, Vec2 target);

double scale_goal_angle(double bearing_radians);

StateVector encode_state(const Scenario& scenario, const Pose& pose);

std::uint32_t state_count(int angle_bins);
int angle_bin(double goal_angle, int angle_bins);
DiscreteState discretize(const StateVector& sv, int angle_bins);

}  // namespace spibox
