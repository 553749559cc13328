#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "socnav/crowd.hpp"
#include "socnav/geometry.hpp"
#include "socnav/kinematics.hpp"
#include "socnav/reward.hpp"

namespace socnav {

/// Start, goal, and pedestrian goals stay this far inside the arena boundary.
inline constexpr double kStartGoalInset = 1.0;  // m

template <typename T>
struct Range {
  T min{};
  T max{};
  bool operator==(const Range&) const = default;
};

/// Everything needed to generate and run one family of episodes.
/// JSON keys mirror the field names; see load_config.
struct ScenarioConfig {
  double arena_half_extent = 5.0;  // m, square arena [-h, h]^2
  Range<int> n_obstacles_range{2, 4};
  Range<int> n_pedestrians_range{3, 5};
  Range<double> obstacle_radius_range{0.2, 0.8};
  double obstacle_position_noise = 0.03;    // m, per axis, applied at reset
  double pedestrian_velocity_noise = 0.15;  // m/s, per component, applied each step
  double goal_min_distance = 6.0;           // m
  int timeout_steps = 200;
  std::uint64_t seed = 0;
  bool unified_mode = false;  // clip_action + angular smoothing penalty
  bool noise_enabled = false;

  Range<double> pedestrian_speed_range{0.8, 1.2};  // m/s
  double pedestrian_radius = 0.3;                  // m
  double max_range = 10.0;                         // m, LiDAR
  RewardParams reward;
  KinematicLimits limits;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& config);

/// Parses a JSON object; unknown keys and malformed values raise ConfigError.
/// Keys that are absent keep their defaults.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical JSON (sorted keys, every field present).
std::string to_json(const ScenarioConfig& config);
/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_digest(const ScenarioConfig& config);

/// A concrete initial scene.
struct Layout {
  Pose2 ego_start;
  Vec2 goal;
  std::vector<Circle> obstacles;
  std::vector<PedestrianState> pedestrians;
};

/// Draws a layout from the seeded generator. Start and goal sit on opposite
/// sides of the arena, the ego faces the goal, and no bodies overlap.
/// Throws ScenarioError after 10^4 failed placements of a single body.
Layout sample_layout(const ScenarioConfig& config, std::uint64_t seed);

/// Hash over every number in the layout; equal layouts hash equal.
std::uint64_t layout_hash(const Layout& layout);

/// Seed for the crowd's own random stream (re-goaling and velocity noise).
std::uint64_t crowd_seed(std::uint64_t seed);

}  // namespace socnav
