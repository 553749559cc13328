#pragma once

#include <string_view>

namespace socnav {

struct RewardParams {
  double r_robot = 0.3;  // m, ego radius and arrival/collision threshold
  double r_dis = 0.5;    // m, discomfort annulus width
  double w_dis = 0.4;
  double w_goal = 1.4;
  double w_ang = 0.01;  // angular-rate smoothing weight (unified mode only)
  double terminal_bonus = 0.5;
  double collision_penalty = -0.5;

  bool operator==(const RewardParams&) const = default;
};

struct RewardInputs {
  double d_goal_prev = 0.0;  // m
  double d_goal = 0.0;       // m
  double d_min = 0.0;        // m, minimum of the current raw scan
};

enum class Terminal { none, arrival, collision, timeout };

std::string_view to_string(Terminal t);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
Terminal terminal_from_string(std::string_view name);

struct RewardOutcome {
  double reward = 0.0;
  Terminal terminal = Terminal::none;
};

/// Four cases, first match wins:
///   d_goal <= r_robot                      -> terminal_bonus, arrival
///   d_min  <= r_robot                      -> collision_penalty, collision
///   d_min  <= r_robot + r_dis              -> discomfort + goal progress
///   otherwise                              -> goal progress
/// discomfort = w_dis (d_min - r_robot - r_dis), progress = w_goal (d_goal_prev - d_goal).
RewardOutcome nav_reward(const RewardInputs& in, const RewardParams& params);

/// -w_ang |w_now - w_prev|
double angular_penalty(double w_prev, double w_now, double w_ang);

}  // namespace socnav
