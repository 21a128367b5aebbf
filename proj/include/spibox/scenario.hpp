#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spibox/geometry.hpp"

namespace spibox {

/// Static arena description. Loaded from a key=value file or built in code.
struct Scenario {
  double arena_width = 800.0;
  double arena_height = 600.0;
  std::vector<Segment> walls;
  std::vector<Disc> obstacles;
  Disc goal{{650.0, 300.0}, 30.0};
  Vec2 box_start{150.0, 300.0};
  double box_heading_start = 0.0;
  double box_side = 40.0;
  double sensor_radius = 150.0;
  int max_steps = 300;
  /// Pixels of translation per unit of net force.
  double translation_gain = 1.0;
  /// Radians of rotation per unit of net torque (pixel-force).
  double rotation_gain = 0.005;

  /// 800x600 bordered arena, one obstacle between the start and the goal.
  static Scenario standard();

  /// Obstacle-free arena with no walls and an unreachable goal; used for
  /// one-step displacement sampling.
  static Scenario open_field();

  /// Human-readable invariant violations; empty when the scenario is valid.
  std::vector<std::string> problems() const;
};

/// Strict parser: unknown keys, malformed values and invariant violations
/// raise ErrorKind::parse with the offending line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario; output parses back to an identical scenario.
std::string format_scenario(const Scenario& s);

}  // namespace spibox
