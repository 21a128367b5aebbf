#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spibox/geometry.hpp"
#include "spibox/scenario.hpp"

namespace spibox {

/// The six push regions around the box. Values match the 1-based action ids.
enum class Action : std::uint8_t {
  left = 1,          // left side center, pushes +x
  bottom_left = 2,   // left half of the bottom side, pushes +y
  bottom_right = 3,  // right half of the bottom side, pushes +y
  right = 4,         // right side center, pushes -x
  top_left = 5,      // left half of the top side, pushes -y
  top_right = 6,     // right half of the top side, pushes -y
};

inline constexpr int kNumActions = 6;

constexpr int action_index(Action a) { return static_cast<int>(a) - 1; }

/// Validated conversion from a 1-based id.
Action action_from_id(int id);

struct RegionForce {
  Vec2 direction;  // unit vector, box frame
  Vec2 offset;     // application point relative to the box center, box frame
};

RegionForce region_force(Action action, double box_side);

struct Pose {
  Vec2 position;
  double heading = 0.0;  // [0, 2π)
};

struct WorldState {
  Pose pose;
  int step_index = 0;
  bool terminated = false;
};

struct StepOutcome {
  Pose new_pose;
  Vec2 displacement;
  double rotation_delta = 0.0;
  bool collided = false;
  bool reached_goal = false;
  bool timed_out = false;

  bool terminal() const { return collided || reached_goal || timed_out; }
};

WorldState initial_state(const Scenario& scenario);

/// Largest one-step displacement: every agent pushing the same way.
double max_step_displacement(const Scenario& scenario, std::size_t n_agents, double speed_factor);

/// Net translation and rotation of one simultaneous push, without any contact
/// evaluation.
struct Motion {
  Vec2 displacement;
  double rotation_delta = 0.0;
};
Motion joint_motion(const Scenario& scenario, double heading, std::span<const Action> joint,
                    double speed_factor);

/// Advances one step. Goal contact takes priority over collision when both
/// occur at the new pose. Throws contract_violation on a terminated state.
StepOutcome apply_joint_action(const Scenario& scenario, const WorldState& state,
                               std::span<const Action> joint, double speed_factor);

WorldState next_state(const WorldState& state, const StepOutcome& outcome);

bool detect_collision(const Scenario& scenario, const Pose& pose);
bool check_goal(const Scenario& scenario, const Pose& pose);

}  // namespace spibox
