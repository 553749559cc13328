#pragma once

#include "socnav/geometry.hpp"

namespace socnav {

struct KinematicLimits {
  double v_max = 0.5;  // m/s
  double w_max = 1.0;  // rad/s
  double dt = 0.2;     // s, navigation planning period

  bool operator==(const KinematicLimits&) const = default;
};

/// Differential-drive command: forward speed and yaw rate. No lateral component.
///
/// Construction through `clamped` enforces 0 <= v <= v_max and |w| <= w_max;
/// out-of-range commands from policies are saturated, not rejected.
struct NavAction {
  double v = 0.0;
  double w = 0.0;

  static NavAction clamped(double v, double w, const KinematicLimits& limits);

  bool operator==(const NavAction&) const = default;
};

inline bool within_limits(const NavAction& a, const KinematicLimits& limits) {
  return a.v >= 0.0 && a.v <= limits.v_max && std::abs(a.w) <= limits.w_max;
}

/// One explicit Euler step of the unicycle model:
/// x += v cos(theta) dt, y += v sin(theta) dt, theta += w dt.
Pose2 step_differential(const Pose2& state, const NavAction& action, double dt);

/// Zeroes the whole command when v < threshold; otherwise passes it through.
NavAction clip_action(const NavAction& raw, double threshold);

inline constexpr double kClipThreshold = 0.3;  // m/s

}  // namespace socnav
