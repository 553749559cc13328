#include "socnav/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace socnav {

NavAction NavAction::clamped(double v, double w, const KinematicLimits& limits) {
  // NaN commands collapse to zero so they never enter the simulation state.
  if (!std::isfinite(v)) v = 0.0;
  if (!std::isfinite(w)) w = 0.0;
  return {std::clamp(v, 0.0, limits.v_max), std::clamp(w, -limits.w_max, limits.w_max)};
}

Pose2 step_differential(const Pose2& state, const NavAction& action, double dt) {
  const double theta = state.heading;
  const Vec2 p{state.position.x + action.v * std::cos(theta) * dt,
               state.position.y + action.v * std::sin(theta) * dt};
  return Pose2(p, theta + action.w * dt);
}

NavAction clip_action(const NavAction& raw, double threshold) {
  if (raw.v < threshold) return {0.0, 0.0};
  return raw;
}

}  // namespace socnav
