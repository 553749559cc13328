#include "socnav/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "socnav/errors.hpp"

namespace socnav {
namespace {

double bearing_error(const Pose2& pose, const Vec2& target) {
  const Vec2 d = target - pose.position;
  return normalize_angle(std::atan2(d.y, d.x) - pose.heading);
}

}  // namespace

NavAction dwa_candidate_action(int index, const DwaParams& p, const KinematicLimits& limits) {
  const int iv = index / p.w_samples;
  const int iw = index % p.w_samples;
  const double v = limits.v_max * iv / (p.v_samples - 1);
  const double w = -limits.w_max + 2.0 * limits.w_max * iw / (p.w_samples - 1);
  return {v, w};
}

DwaCandidate dwa_evaluate(const Pose2& ego, double ego_radius, const NavAction& candidate,
                          const Vec2& goal, std::span<const MovingCircle> bodies,
                          const DwaParams& p, const KinematicLimits& limits) {
  const int samples = std::max(1, static_cast<int>(std::lround(p.horizon / p.rollout_dt)));
  DwaCandidate out;
  out.action = candidate;
  out.min_clearance = std::numeric_limits<double>::infinity();

  Pose2 pose = ego;
  for (int k = 1; k <= samples; ++k) {
    pose = step_differential(pose, candidate, p.rollout_dt);
    const double t = k * p.rollout_dt;
    for (const MovingCircle& b : bodies) {
      const Vec2 c = b.circle.center + t * b.velocity;
      out.min_clearance =
          std::min(out.min_clearance, norm(pose.position - c) - b.circle.radius - ego_radius - p.safety_margin);
    }
  }
  out.admissible = out.min_clearance >= 0.0;

  const double heading = 1.0 - std::abs(bearing_error(pose, goal)) / std::numbers::pi;
  const double clearance = std::min(out.min_clearance, p.clearance_cap) / p.clearance_cap;
  const double velocity = candidate.v / limits.v_max;
  out.score = p.w_heading * heading + p.w_clearance * clearance + p.w_velocity * velocity;
  return out;
}

DwaResult dwa_plan(const Pose2& ego, const NavAction& /*ego_velocity*/, double ego_radius,
                   const Vec2& goal, std::span<const MovingCircle> bodies, const DwaParams& p,
                   const KinematicLimits& limits) {
  // No acceleration limits on the ego, so the dynamic window is the whole grid.
  DwaResult best;
  double best_score = -std::numeric_limits<double>::infinity();
  const int n = p.v_samples * p.w_samples;
  for (int i = 0; i < n; ++i) {
    const DwaCandidate c =
        dwa_evaluate(ego, ego_radius, dwa_candidate_action(i, p, limits), goal, bodies, p, limits);
    if (!c.admissible) continue;
    const bool better =
        c.score > best_score ||
        (c.score == best_score && std::abs(c.action.w) < std::abs(best.action.w));
    if (better) {
      best_score = c.score;
      best.action = c.action;
      best.index = i;
    }
  }
  if (best.index < 0) {
    const double bearing = bearing_error(ego, goal);
    best.action = {0.0, bearing >= 0.0 ? limits.w_max : -limits.w_max};
    best.escaped = true;
  }
  return best;
}

NavAction orca_ego_plan(const Pose2& ego, const NavAction& ego_velocity, double ego_radius,
                        std::span<const PedestrianState> pedestrians,
                        std::span<const Circle> obstacles, const Vec2& goal,
                        const KinematicLimits& limits, const OrcaEgoParams& params) {
  const Vec2 heading{std::cos(ego.heading), std::sin(ego.heading)};
  const AgentDisc self{ego.position, ego_velocity.v * heading, ego_radius + params.safety_margin,
                       limits.v_max};

  std::vector<AgentDisc> neighbors;
  neighbors.reserve(pedestrians.size());
  for (const auto& p : pedestrians) {
    neighbors.push_back({p.position, p.velocity, p.radius, p.preferred_speed});
  }
  const Vec2 pref = preferred_velocity_toward(ego.position, goal, limits.v_max, params.orca.dt);
  const Vec2 u = orca_velocity(self, neighbors, obstacles, pref, params.orca).velocity;

  const double v = std::clamp(dot(u, heading), 0.0, limits.v_max);
  // A vanishing ORCA velocity carries no bearing; fall back to the goal.
  const Vec2 aim = norm_sq(u) > 1e-18 ? u : goal - ego.position;
  const double err = normalize_angle(std::atan2(aim.y, aim.x) - ego.heading);
  const double w = std::clamp(params.heading_gain * err, -limits.w_max, limits.w_max);
  return {v, w};
}

NavAction StraightPolicy::act(const Observation& obs, const WorldView&) {
  const double bearing = obs.goal.theta;
  return NavAction::clamped(limits_.v_max * std::max(0.0, std::cos(bearing)), gain_ * bearing,
                            limits_);
}

NavAction DwaPolicy::act(const Observation&, const WorldView& world) {
  std::vector<MovingCircle> bodies;
  bodies.reserve(world.obstacles.size() + world.pedestrians.size());
  for (const Circle& c : world.obstacles) bodies.push_back({c, {}});
  for (const auto& p : world.pedestrians) bodies.push_back({{p.position, p.radius}, p.velocity});
  const DwaResult r = dwa_plan(world.ego, world.ego_velocity, world.ego_radius, world.goal,
                               bodies, params_, world.limits);
  if (r.escaped) ++escapes_;
  return r.action;
}

NavAction OrcaEgoPolicy::act(const Observation&, const WorldView& world) {
  return orca_ego_plan(world.ego, world.ego_velocity, world.ego_radius, world.pedestrians,
                       world.obstacles, world.goal, world.limits, params_);
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::zero: return "zero";
    case PolicyKind::straight: return "straight";
    case PolicyKind::dwa: return "dwa";
    case PolicyKind::orca: return "orca";
  }
  return "zero";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  if (name == "zero") return PolicyKind::zero;
  if (name == "straight") return PolicyKind::straight;
  if (name == "dwa") return PolicyKind::dwa;
  if (name == "orca") return PolicyKind::orca;
  throw ConfigError("unknown policy '" + std::string(name) + "' (expected zero|straight|dwa|orca)");
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const KinematicLimits& limits) {
  switch (spec.kind) {
    case PolicyKind::zero: return std::make_unique<ZeroPolicy>();
    case PolicyKind::straight: return std::make_unique<StraightPolicy>(limits);
    case PolicyKind::dwa: return std::make_unique<DwaPolicy>(spec.dwa);
    case PolicyKind::orca: {
      OrcaEgoParams orca = spec.orca;
      orca.orca.dt = limits.dt;
      return std::make_unique<OrcaEgoPolicy>(orca);
    }
  }
  throw ConfigError("unhandled policy kind");
}

}  // namespace socnav
