#include "socnav/reward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace socnav {

std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::none: return "none";
    case Terminal::arrival: return "arrival";
    case Terminal::collision: return "collision";
    case Terminal::timeout: return "timeout";
  }
  return "none";
}

Terminal terminal_from_string(std::string_view name) {
  if (name == "none") return Terminal::none;
  if (name == "arrival") return Terminal::arrival;
  if (name == "collision") return Terminal::collision;
  if (name == "timeout") return Terminal::timeout;
  throw std::invalid_argument("unknown terminal tag: " + std::string(name));
}

RewardOutcome nav_reward(const RewardInputs& in, const RewardParams& p) {
  if (in.d_goal <= p.r_robot) return {p.terminal_bonus, Terminal::arrival};
  if (in.d_min <= p.r_robot) return {p.collision_penalty, Terminal::collision};

  const double progress = p.w_goal * (in.d_goal_prev - in.d_goal);
  if (in.d_min <= p.r_robot + p.r_dis) {
    const double discomfort = p.w_dis * (in.d_min - p.r_robot - p.r_dis);
    return {discomfort + progress, Terminal::none};
  }
  return {progress, Terminal::none};
}

double angular_penalty(double w_prev, double w_now, double w_ang) {
  return -w_ang * std::abs(w_now - w_prev);
}

}  // namespace socnav
