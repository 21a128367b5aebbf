#include "spibox/world.hpp"

#include "spibox/error.hpp"

namespace spibox {

Action action_from_id(int id) {
  if (id < 1 || id > kNumActions) {
    fail(ErrorKind::invalid_argument, "action id must be in 1..6, got " + std::to_string(id));
  }
  return static_cast<Action>(id);
}

RegionForce region_force(Action action, double box_side) {
  const double half = box_side / 2.0;
  const double quarter = box_side / 4.0;
  switch (action) {
    case Action::left: return {{1, 0}, {-half, 0}};
    case Action::bottom_left: return {{0, 1}, {-quarter, -half}};
    case Action::bottom_right: return {{0, 1}, {quarter, -half}};
    case Action::right: return {{-1, 0}, {half, 0}};
    case Action::top_left: return {{0, -1}, {-quarter, half}};
    case Action::top_right: return {{0, -1}, {quarter, half}};
  }
  fail(ErrorKind::invalid_argument, "invalid action id " + std::to_string(static_cast<int>(action)));
}

WorldState initial_state(const Scenario& scenario) {
  return {{scenario.box_start, wrap_two_pi(scenario.box_heading_start)}, 0, false};
}

double max_step_displacement(const Scenario& scenario, std::size_t n_agents, double speed_factor) {
  return speed_factor * scenario.translation_gain * static_cast<double>(n_agents);
}

Motion joint_motion(const Scenario& scenario, double heading, std::span<const Action> joint,
                    double speed_factor) {
  Vec2 force;
  double torque = 0.0;
  for (Action a : joint) {
    const RegionForce rf = region_force(a, scenario.box_side);
    force += rf.direction;
    torque += cross(rf.offset, rf.direction);
  }
  const double gain = speed_factor * scenario.translation_gain;
  return {gain * rotate(force, heading), speed_factor * scenario.rotation_gain * torque};
}

StepOutcome apply_joint_action(const Scenario& scenario, const WorldState& state,
                               std::span<const Action> joint, double speed_factor) {
  if (state.terminated) fail(ErrorKind::contract_violation, "step applied to a terminated episode");
  if (!(speed_factor > 0.0 && speed_factor <= 1.0)) {
    fail(ErrorKind::invalid_argument, "speed_factor must be in (0, 1]");
  }
  const Motion m = joint_motion(scenario, state.pose.heading, joint, speed_factor);
  StepOutcome out;
  out.displacement = m.displacement;
  out.rotation_delta = m.rotation_delta;
  out.new_pose = {state.pose.position + m.displacement, wrap_two_pi(state.pose.heading + m.rotation_delta)};
  out.reached_goal = check_goal(scenario, out.new_pose);
  out.collided = !out.reached_goal && detect_collision(scenario, out.new_pose);
  out.timed_out = !out.reached_goal && !out.collided && state.step_index + 1 >= scenario.max_steps;
  return out;
}

WorldState next_state(const WorldState& state, const StepOutcome& outcome) {
  return {outcome.new_pose, state.step_index + 1, outcome.terminal()};
}

namespace {

OrientedSquare box_at(const Scenario& scenario, const Pose& pose) {
  return {pose.position, pose.heading, scenario.box_side};
}

}  // namespace

bool detect_collision(const Scenario& scenario, const Pose& pose) {
  const OrientedSquare box = box_at(scenario, pose);
  for (const Disc& o : scenario.obstacles) {
    if (square_touches_disc(box, o)) return true;
  }
  for (const Segment& w : scenario.walls) {
    if (square_touches_segment(box, w)) return true;
  }
  return false;
}

bool check_goal(const Scenario& scenario, const Pose& pose) {
  return square_touches_disc(box_at(scenario, pose), scenario.goal);
}

}  // namespace spibox
