#include "spibox/reward.hpp"

#include <algorithm>
#include <cmath>

#include "spibox/error.hpp"

namespace spibox {

bool RewardWeights::valid() const {
  const bool non_negative = distance >= 0.0 && rotation >= 0.0 && collision >= 0.0 && goal >= 0.0;
  return non_negative && distance >= std::max({rotation, collision, goal});
}

double distance_reward(double old_distance, double new_distance) {
  require(old_distance >= 0.0 && new_distance >= 0.0, "distances must be non-negative");
  return (old_distance - new_distance) * kDistanceScale;
}

double rotation_reward(double old_angle, double new_angle) {
  return std::cos(new_angle - old_angle) - kRotationOffset;
}

double collision_reward(bool collided) { return collided ? kCollisionPenalty : 0.0; }

double goal_reward(bool reached) { return reached ? kGoalBonus : 0.0; }

RewardBreakdown total_reward(const RewardInputs& in, const RewardWeights& w) {
  require(w.valid(), "reward weights must be non-negative with the distance weight largest");
  RewardBreakdown r;
  r.distance = distance_reward(in.old_distance, in.new_distance);
  r.rotation = rotation_reward(in.old_angle, in.new_angle);
  r.collision = collision_reward(in.collided);
  r.goal = goal_reward(in.reached_goal);
  r.total = w.distance * r.distance + w.rotation * r.rotation + w.collision * r.collision + w.goal * r.goal;
  return r;
}

}  // namespace spibox
