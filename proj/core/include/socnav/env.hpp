#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "socnav/crowd.hpp"
#include "socnav/kinematics.hpp"
#include "socnav/lidar.hpp"
#include "socnav/reward.hpp"
#include "socnav/scenario.hpp"

namespace socnav {

/// Goal in the ego frame: distance and bearing in (-pi, pi].
struct GoalPolar {
  double r = 0.0;
  double theta = 0.0;
};

GoalPolar goal_polar(const Pose2& ego, const Vec2& goal);

struct Observation {
  TransformedStack scan_stack;
  GoalPolar goal;
  NavAction prev_action;
};

struct StepInfo {
  int step = 0;
  /// Smallest surface-to-surface gap between the ego and any body (negative on overlap).
  double min_separation = 0.0;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  Terminal terminal = Terminal::none;
  StepInfo info;
};

/// Ground-truth scene state. Classical planners consume this; learned policies
/// should only read the Observation.
struct WorldView {
  Pose2 ego;
  NavAction ego_velocity;
  double ego_radius = 0.3;
  Vec2 goal;
  std::span<const Circle> obstacles;
  std::span<const PedestrianState> pedestrians;
  KinematicLimits limits;
};

/// One social-navigation episode engine.
///
/// Step order is fixed: the ego integrates its command, pedestrians then move
/// (deciding ego visibility from the ego's pre-step speed), the new scan is
/// cast and pushed, and finally reward and termination are evaluated.
/// An instance is single-threaded; separate instances are independent.
class Environment {
 public:
  explicit Environment(ScenarioConfig config);

  Observation reset(std::uint64_t seed);
  /// Starts from an explicit scene instead of a sampled one.
  Observation reset(const Layout& layout, std::uint64_t seed = 0);

  /// Throws ContractViolation when the episode already ended or was never reset.
  StepResult step(const NavAction& action);

  Observation observe() const;
  WorldView world() const;

  const ScenarioConfig& config() const { return config_; }
  const Layout& layout() const { return layout_; }
  const Pose2& ego_pose() const { return ego_; }
  const Vec2& goal() const { return layout_.goal; }
  const CrowdState& crowd() const { return crowd_; }
  std::span<const Circle> obstacles() const { return layout_.obstacles; }
  const NavAction& prev_action() const { return prev_action_; }
  const LidarScan& current_scan() const { return stack_.newest(); }
  int step_index() const { return step_; }
  Terminal terminal() const { return terminal_; }
  bool started() const { return started_; }

  /// Min surface gap from the ego to every obstacle and pedestrian.
  double min_separation() const;

 private:
  LidarScan cast() const;

  ScenarioConfig config_;
  OrcaParams orca_;
  Layout layout_;
  Pose2 ego_;
  NavAction prev_action_;
  CrowdState crowd_;
  ScanStack stack_;
  int step_ = 0;
  Terminal terminal_ = Terminal::none;
  bool started_ = false;
};

/// Something that maps an observation (and optionally privileged state) to a command.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual NavAction act(const Observation& obs, const WorldView& world) = 0;
};

/// Adapts a plain observation -> action callable.
class FunctionPolicy final : public Policy {
 public:
  explicit FunctionPolicy(std::function<NavAction(const Observation&)> fn) : fn_(std::move(fn)) {}
  NavAction act(const Observation& obs, const WorldView&) override { return fn_(obs); }

 private:
  std::function<NavAction(const Observation&)> fn_;
};

struct TraceRecord {
  int t = 0;
  Pose2 ego;
  std::vector<Vec2> pedestrians;
  NavAction action;
  double reward = 0.0;
  Terminal terminal = Terminal::none;
};

struct EpisodeTrace {
  std::vector<TraceRecord> records;  // records[0] is the reset state
  Terminal terminal = Terminal::none;
  int steps = 0;
  double nav_time_s = 0.0;
  double min_separation = 0.0;     // over the whole episode
  bool geometric_collision = false;  // ego overlapped a body at some step
  std::uint64_t spawn_hash = 0;
};

/// Runs a freshly reset environment to termination. Policy exceptions are
/// rethrown as PolicyError carrying the step index.
EpisodeTrace run_episode(Environment& env, Policy& policy);
EpisodeTrace run_episode(const ScenarioConfig& config, std::uint64_t seed, Policy& policy);

/// Observation as float32 arrays for foreign-language consumers.
/// scan_stack is K x N row-major, oldest scan first.
struct FlatObservation {
  std::vector<float> scan_stack;
  std::array<float, 2> goal_polar{};
  std::array<float, 2> prev_action{};
};

FlatObservation flatten(const Observation& obs);

}  // namespace socnav
