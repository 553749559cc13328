#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "socnav/crowd.hpp"
#include "socnav/env.hpp"
#include "socnav/kinematics.hpp"

namespace socnav {

struct DwaParams {
  int v_samples = 11;
  int w_samples = 21;
  double horizon = 2.0;      // s
  double rollout_dt = 0.2;   // s
  double w_heading = 1.0;
  double w_clearance = 1.0;
  double w_velocity = 1.5;
  double clearance_cap = 1.0;  // m
  double safety_margin = 0.1;  // m, added to the ego radius during rollouts

  bool operator==(const DwaParams&) const = default;
};

/// A body extrapolated at constant velocity over the planning horizon.
struct MovingCircle {
  Circle circle;
  Vec2 velocity;
};

struct DwaCandidate {
  NavAction action;
  bool admissible = false;
  double min_clearance = 0.0;  // m, surface gap over the rollout
  double score = 0.0;
};

struct DwaResult {
  NavAction action;
  bool escaped = false;  // no admissible candidate; rotate-in-place fallback
  int index = -1;        // chosen candidate, -1 on escape
};

/// Candidate i is (v_i, w_j) with i = iv * w_samples + iw, v over [0, v_max] and
/// w over [-w_max, w_max], both evenly spaced.
NavAction dwa_candidate_action(int index, const DwaParams& params, const KinematicLimits& limits);

/// Rolls one candidate out and scores it. Inadmissible when the ego disc, grown
/// by params.safety_margin, ever intersects an extrapolated body at a horizon sample.
DwaCandidate dwa_evaluate(const Pose2& ego, double ego_radius, const NavAction& candidate,
                          const Vec2& goal, std::span<const MovingCircle> bodies,
                          const DwaParams& params, const KinematicLimits& limits);

/// Dynamic-window search over the full velocity grid. Ties prefer lower |w|,
/// then lower candidate index.
DwaResult dwa_plan(const Pose2& ego, const NavAction& ego_velocity, double ego_radius,
                   const Vec2& goal, std::span<const MovingCircle> bodies,
                   const DwaParams& params, const KinematicLimits& limits);

inline constexpr double kOrcaEgoHeadingGain = 2.0;

struct OrcaEgoParams {
  OrcaParams orca{.time_horizon_agents = 5.0};
  double heading_gain = kOrcaEgoHeadingGain;
  // The unicycle cannot follow the holonomic velocity exactly, so the ego
  // plans with a slightly larger disc than it has.
  double safety_margin = 0.2;  // m

  bool operator==(const OrcaEgoParams&) const = default;
};

/// Holonomic ORCA velocity for the ego, converted to a unicycle command by
/// forward projection (v) and proportional heading control (w).
NavAction orca_ego_plan(const Pose2& ego, const NavAction& ego_velocity, double ego_radius,
                        std::span<const PedestrianState> pedestrians,
                        std::span<const Circle> obstacles, const Vec2& goal,
                        const KinematicLimits& limits, const OrcaEgoParams& params = {});

class ZeroPolicy final : public Policy {
 public:
  NavAction act(const Observation&, const WorldView&) override { return {}; }
};

/// Turns toward the goal bearing and drives forward in proportion to cos(bearing).
class StraightPolicy final : public Policy {
 public:
  explicit StraightPolicy(KinematicLimits limits = {}, double gain = 2.0)
      : limits_(limits), gain_(gain) {}
  NavAction act(const Observation& obs, const WorldView& world) override;

 private:
  KinematicLimits limits_;
  double gain_;
};

class DwaPolicy final : public Policy {
 public:
  explicit DwaPolicy(DwaParams params = {}) : params_(params) {}
  NavAction act(const Observation& obs, const WorldView& world) override;
  int escapes() const { return escapes_; }

 private:
  DwaParams params_;
  int escapes_ = 0;
};

class OrcaEgoPolicy final : public Policy {
 public:
  explicit OrcaEgoPolicy(OrcaEgoParams params = {}) : params_(params) {}
  NavAction act(const Observation& obs, const WorldView& world) override;

 private:
  OrcaEgoParams params_;
};

enum class PolicyKind { zero, straight, dwa, orca };

std::string_view to_string(PolicyKind kind);
/// Throws ConfigError for names other than zero|straight|dwa|orca.
PolicyKind policy_kind_from_string(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::dwa;
  DwaParams dwa;
  OrcaEgoParams orca;
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const KinematicLimits& limits);

}  // namespace socnav
