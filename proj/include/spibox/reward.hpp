#pragma once

namespace spibox {

struct RewardWeights {
  double distance = 2.0;
  double rotation = 1.0;
  double collision = 1.0;
  double goal = 1.0;

  /// Non-negative, with the distance weight the largest.
  bool valid() const;
};

struct RewardBreakdown {
  double distance = 0.0;
  double rotation = 0.0;
  double collision = 0.0;
  double goal = 0.0;
  double total = 0.0;
};

inline constexpr double kDistanceScale = 2.5;
inline constexpr double kRotationOffset = 0.98;
inline constexpr double kCollisionPenalty = -900.0;
inline constexpr double kGoalBonus = 900.0;

double distance_reward(double old_distance, double new_distance);
double rotation_reward(double old_angle, double new_angle);
double collision_reward(bool collided);
double goal_reward(bool reached);

struct RewardInputs {
  double old_distance = 0.0;
  double new_distance = 0.0;
  double old_angle = 0.0;
  double new_angle = 0.0;
  bool collided = false;
  bool reached_goal = false;
};

RewardBreakdown total_reward(const RewardInputs& in, const RewardWeights& w);

}  // namespace spibox
