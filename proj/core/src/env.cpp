#include "socnav/env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socnav/errors.hpp"

namespace socnav {

GoalPolar goal_polar(const Pose2& ego, const Vec2& goal) {
  const Vec2 local = world_to_frame(goal, ego);
  return {norm(local), normalize_angle(std::atan2(local.y, local.x))};
}

Environment::Environment(ScenarioConfig config) : config_(std::move(config)) {
  validate(config_);
  orca_.dt = config_.limits.dt;
}

Observation Environment::reset(std::uint64_t seed) {
  return reset(sample_layout(config_, seed), seed);
}

Observation Environment::reset(const Layout& layout, std::uint64_t seed) {
  layout_ = layout;
  ego_ = layout.ego_start;
  prev_action_ = {};
  crowd_ = CrowdState{};
  crowd_.pedestrians = layout.pedestrians;
  crowd_.rng = Rng(crowd_seed(seed));
  crowd_.goal_half_extent = config_.arena_half_extent - kStartGoalInset;
  crowd_.noise_enabled = config_.noise_enabled;
  crowd_.velocity_noise = config_.pedestrian_velocity_noise;
  step_ = 0;
  terminal_ = Terminal::none;
  started_ = true;
  stack_ = ScanStack(kStackDepth);
  stack_.reset(cast());
  return observe();
}

LidarScan Environment::cast() const {
  std::vector<Circle> bodies(layout_.obstacles.begin(), layout_.obstacles.end());
  for (const auto& p : crowd_.pedestrians) bodies.push_back({p.position, p.radius});
  return cast_scan(ego_, bodies, config_.max_range);
}

Observation Environment::observe() const {
  if (!started_) throw ContractViolation("observe() before reset()");
  return {build_observation(stack_, ego_), goal_polar(ego_, layout_.goal), prev_action_};
}

WorldView Environment::world() const {
  return {ego_,
          prev_action_,
          config_.reward.r_robot,
          layout_.goal,
          layout_.obstacles,
          crowd_.pedestrians,
          config_.limits};
}

double Environment::min_separation() const {
  double gap = std::numeric_limits<double>::infinity();
  const double r = config_.reward.r_robot;
  for (const Circle& c : layout_.obstacles) {
    gap = std::min(gap, norm(c.center - ego_.position) - c.radius - r);
  }
  for (const auto& p : crowd_.pedestrians) {
    gap = std::min(gap, norm(p.position - ego_.position) - p.radius - r);
  }
  return gap;
}

StepResult Environment::step(const NavAction& raw) {
  if (!started_) throw ContractViolation("step() before reset()");
  if (terminal_ != Terminal::none) {
    throw ContractViolation("step() on a finished episode (terminal: " +
                            std::string(to_string(terminal_)) + "); call reset()");
  }

  NavAction action = NavAction::clamped(raw.v, raw.w, config_.limits);
  if (config_.unified_mode) action = clip_action(action, kClipThreshold);

  const double pre_step_speed = prev_action_.v;
  const double d_goal_prev = norm(layout_.goal - ego_.position);

  ego_ = step_differential(ego_, action, config_.limits.dt);
  crowd_ = step_crowd(crowd_, EgoNeighbor{ego_, pre_step_speed, config_.reward.r_robot},
                      layout_.obstacles, orca_);
  stack_.push(cast());

  const RewardInputs in{d_goal_prev, norm(layout_.goal - ego_.position), stack_.newest().min_range()};
  auto [reward, terminal] = nav_reward(in, config_.reward);
  if (config_.unified_mode) reward += angular_penalty(prev_action_.w, action.w, config_.reward.w_ang);

  prev_action_ = action;
  ++step_;
  if (terminal == Terminal::none && step_ >= config_.timeout_steps) terminal = Terminal::timeout;
  terminal_ = terminal;

  StepResult result;
  result.observation = observe();
  result.reward = reward;
  result.terminal = terminal;
  result.info = {step_, min_separation()};
  return result;
}

namespace {

TraceRecord snapshot(const Environment& env, const NavAction& action, double reward,
                     Terminal terminal) {
  TraceRecord rec;
  rec.t = env.step_index();
  rec.ego = env.ego_pose();
  rec.pedestrians.reserve(env.crowd().pedestrians.size());
  for (const auto& p : env.crowd().pedestrians) rec.pedestrians.push_back(p.position);
  rec.action = action;
  rec.reward = reward;
  rec.terminal = terminal;
  return rec;
}

}  // namespace

EpisodeTrace run_episode(Environment& env, Policy& policy) {
  if (!env.started() || env.terminal() != Terminal::none || env.step_index() != 0) {
    throw ContractViolation("run_episode needs a freshly reset environment");
  }
  EpisodeTrace trace;
  trace.spawn_hash = layout_hash(env.layout());
  trace.records.push_back(snapshot(env, {}, 0.0, Terminal::none));
  trace.min_separation = env.min_separation();

  Observation obs = env.observe();
  while (true) {
    NavAction action;
    try {
      action = policy.act(obs, env.world());
    } catch (const std::exception& e) {
      throw PolicyError(env.step_index(), e.what());
    }
    StepResult r = env.step(action);
    trace.records.push_back(snapshot(env, env.prev_action(), r.reward, r.terminal));
    trace.min_separation = std::min(trace.min_separation, r.info.min_separation);
    if (r.terminal != Terminal::none) {
      trace.terminal = r.terminal;
      break;
    }
    obs = std::move(r.observation);
  }
  trace.steps = env.step_index();
  trace.nav_time_s = trace.steps * env.config().limits.dt;
  trace.geometric_collision = trace.min_separation <= 0.0;
  return trace;
}

EpisodeTrace run_episode(const ScenarioConfig& config, std::uint64_t seed, Policy& policy) {
  Environment env(config);
  env.reset(seed);
  return run_episode(env, policy);
}

FlatObservation flatten(const Observation& obs) {
  FlatObservation flat;
  flat.scan_stack.assign(obs.scan_stack.values.begin(), obs.scan_stack.values.end());
  flat.goal_polar = {static_cast<float>(obs.goal.r), static_cast<float>(obs.goal.theta)};
  flat.prev_action = {static_cast<float>(obs.prev_action.v), static_cast<float>(obs.prev_action.w)};
  return flat;
}

}  // namespace socnav
