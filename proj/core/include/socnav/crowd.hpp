#pragma once

#include <optional>
#include <span>
#include <vector>

#include "socnav/geometry.hpp"
#include "socnav/rng.hpp"

namespace socnav {

/// ORCA solver settings. Defaults follow the RVO2 reference implementation.
struct OrcaParams {
  double time_horizon_agents = 2.0;     // s
  double time_horizon_obstacles = 1.0;  // s
  double neighbor_distance = 10.0;      // m
  int max_neighbors = 10;
  double reciprocity = 0.5;  // share of the avoidance effort taken for other agents
  double dt = 0.2;           // s

  bool operator==(const OrcaParams&) const = default;
};

/// A disc-shaped agent as seen by the velocity solver.
struct AgentDisc {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  double max_speed = 1.0;
};

/// Directed line; the permitted half-plane lies to its left.
struct OrcaLine {
  Vec2 point;
  Vec2 direction;

  /// Signed violation: > 0 when v lies on the forbidden (right) side.
  double violation(const Vec2& v) const { return det(direction, point - v); }
};

struct OrcaResult {
  Vec2 velocity;
  /// Set when `self` already overlapped a neighbor or obstacle; the velocity is
  /// then a push-apart along the center line instead of an LP solution.
  bool overlap = false;
};

/// Half-plane constraints for `self`: static obstacles first (full responsibility),
/// then agents (shared by `params.reciprocity`). Neighbors beyond
/// neighbor_distance, or beyond the max_neighbors nearest, are skipped.
std::vector<OrcaLine> build_orca_lines(const AgentDisc& self, std::span<const AgentDisc> neighbors,
                                       std::span<const Circle> obstacles,
                                       const OrcaParams& params, std::size_t* num_obstacle_lines = nullptr);

/// Velocity closest to `preferred_velocity` satisfying every ORCA half-plane and
/// |v| <= self.max_speed; falls back to the least-violating velocity when the
/// 2D program is infeasible.
OrcaResult orca_velocity(const AgentDisc& self, std::span<const AgentDisc> neighbors,
                         std::span<const Circle> obstacles, const Vec2& preferred_velocity,
                         const OrcaParams& params);

struct PedestrianState {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  double preferred_speed = 1.0;
  Vec2 goal;
};

struct CrowdState {
  std::vector<PedestrianState> pedestrians;
  Rng rng{0};
  double goal_half_extent = 5.0;  // new goals drawn in [-h, h]^2
  double goal_tolerance = 0.3;    // re-goal once this close
  bool noise_enabled = false;
  double velocity_noise = 0.15;   // m/s, per component
};

/// Ego as a conditional ORCA neighbor of the pedestrians.
struct EgoNeighbor {
  Pose2 pose;
  double speed = 0.0;  // realized forward speed, m/s
  double radius = 0.3;
};

inline constexpr double kEgoVisibilityRatio = 1.5;

/// A pedestrian reacts to the ego only while moving at least 1.5x the ego's speed.
inline bool pedestrian_sees_ego(double pedestrian_speed, double ego_speed) {
  return pedestrian_speed >= kEgoVisibilityRatio * ego_speed;
}

/// Preferred velocity toward `goal` at `speed`, slowing to land on the goal in one step.
Vec2 preferred_velocity_toward(const Vec2& position, const Vec2& goal, double speed, double dt);

/// Synchronous crowd update: every pedestrian solves ORCA against the previous
/// snapshot, then noise is applied in index order and positions are integrated.
CrowdState step_crowd(const CrowdState& crowd, const std::optional<EgoNeighbor>& ego,
                      std::span<const Circle> obstacles, const OrcaParams& params);

}  // namespace socnav
