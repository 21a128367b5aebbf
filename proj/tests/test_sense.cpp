#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "spibox/sense.hpp"

using namespace spibox;

namespace {

/// Point at `dist` along box-frame bearing `deg` for a box at `pose`.
Vec2 at_bearing(const Pose& pose, double deg, double dist) {
  return pose.position + rotate(Vec2{dist, 0.0}, pose.heading + radians(deg));
}

/// Obstacles in octants 3 and 6, a wall spanning octants 4 and 5, goal at 30°.
Scenario figure_scenario(const Pose& pose) {
  Scenario s = Scenario::open_field();
  s.box_start = pose.position;
  s.box_heading_start = pose.heading;
  s.obstacles = {Disc{at_bearing(pose, 112.5, 80.0), 10.0}, Disc{at_bearing(pose, 247.5, 80.0), 10.0}};
  // Perpendicular to the 180° bearing at 100 px, ±30 px long: spans about 163°..197°.
  s.walls = {Segment{pose.position + rotate(Vec2{-100.0, -30.0}, pose.heading),
                     pose.position + rotate(Vec2{-100.0, 30.0}, pose.heading)}};
  s.goal = Disc{at_bearing(pose, 30.0, 300.0), 30.0};
  return s;
}

}  // namespace

TEST_CASE("octants are half-open 45 degree wedges counter-clockwise from the box x-axis") {
  CHECK(octant_of({1.0, 0.1}) == 1);
  CHECK(octant_of({1.0, 0.0}) == 1);
  CHECK(octant_of({0.0, 1.0}) == 3);
  CHECK(octant_of(rotate({1.0, 0.0}, radians(359.0))) == 8);
  CHECK(octant_of({-1.0, 0.0}) == 5);
  CHECK(octant_of({1.0, -1e-12}) == 8);
  CHECK(oracle::throws_kind([] { octant_of({0.0, 0.0}); }, ErrorKind::invalid_argument));
}

TEST_CASE("goal angle scaling") {
  CHECK(scale_goal_angle(radians(180.0)) == doctest::Approx(0.0));
  CHECK(scale_goal_angle(0.0) == -1.0);
  CHECK(scale_goal_angle(radians(30.0)) == doctest::Approx(-5.0 / 6.0));
  CHECK(scale_goal_angle(radians(359.999)) < 1.0);
}

TEST_CASE("the figure configuration encodes to {0,0,1,1,1,1,0,0,-0.83}") {
  for (double heading : {0.0, 0.9, 4.0}) {
    CAPTURE(heading);
    const Pose pose{{400.0, 300.0}, heading};
    const Scenario s = figure_scenario(pose);
    const StateVector sv = encode_state(s, pose);
    const std::array<bool, 8> expected{false, false, true, true, true, true, false, false};
    CHECK(sv.occupied == expected);
    // Reported to two decimals the value is exactly -0.83.
    CHECK(std::round(sv.goal_angle * 100.0) / 100.0 == -0.83);
    CHECK(sv.goal_angle == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
  }
}

TEST_CASE("empty surroundings with the goal straight behind encode to all zeros") {
  Scenario s = Scenario::open_field();
  const Pose pose{{0.0, 0.0}, 0.0};
  s.goal = Disc{{-500.0, 0.0}, 30.0};
  const StateVector sv = encode_state(s, pose);
  CHECK(sv == StateVector{});
}

TEST_CASE("a wall crossing the octant 1/2 boundary sets both bits") {
  Scenario s = Scenario::open_field();
  const Pose pose{{0.0, 0.0}, 0.0};
  // Vertical segment at x = 100 from y = 50 to y = 140 crosses the 45° ray at (100, 100).
  s.walls = {Segment{{100.0, 50.0}, {100.0, 140.0}}};
  const StateVector sv = encode_state(s, pose);
  CHECK(sv.occupied[0]);
  CHECK(sv.occupied[1]);
  for (int k = 2; k < 8; ++k) CHECK_FALSE(sv.occupied[k]);
}

TEST_CASE("octant bits ignore distance inside the sensor radius and everything beyond it") {
  Scenario s = Scenario::open_field();
  const Pose pose{{0.0, 0.0}, 0.0};
  for (double dist : {30.0, 80.0, 140.0}) {
    s.obstacles = {Disc{at_bearing(pose, 200.0, dist), 5.0}};
    const StateVector sv = encode_state(s, pose);
    CHECK(sv.occupied[4]);
    int set = 0;
    for (bool b : sv.occupied) set += b;
    CHECK(set == 1);
  }
  s.obstacles = {Disc{at_bearing(pose, 200.0, 160.0), 5.0}};
  CHECK(encode_state(s, pose).occupied == std::array<bool, 8>{});
  s.obstacles.clear();
  s.walls = {Segment{{151.0, -50.0}, {151.0, 50.0}}};
  CHECK(encode_state(s, pose).occupied == std::array<bool, 8>{});
}

TEST_CASE("discretize packs the mask above the angle bin") {
  StateVector zero{};
  zero.goal_angle = -1.0;
  CHECK(discretize(zero, 8).index == 0);

  StateVector full{};
  full.occupied.fill(true);
  full.goal_angle = 1.0;  // the final bin is closed
  CHECK(discretize(full, 8).index == 255 * 8 + 7);
  CHECK(state_count(8) == 2048);

  CHECK(angle_bin(-0.83, 8) == 0);
  CHECK(angle_bin(-0.75, 8) == 1);
  CHECK(angle_bin(0.999, 8) == 7);
  CHECK(angle_bin(0.3, 1) == 0);
}

TEST_CASE("discretize is a bijection onto [0, 256 * bins)") {
  const int bins = 4;
  std::vector<int> seen(state_count(bins), 0);
  for (unsigned mask = 0; mask < 256; ++mask) {
    for (int b = 0; b < bins; ++b) {
      StateVector sv{};
      for (int k = 0; k < 8; ++k) sv.occupied[k] = (mask >> k) & 1u;
      sv.goal_angle = -1.0 + (b + 0.5) * 2.0 / bins;
      seen.at(discretize(sv, bins).index) += 1;
    }
  }
  for (int c : seen) CHECK(c == 1);
}
