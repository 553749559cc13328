#include "socnav/crowd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace socnav {
namespace {

constexpr double kLpEpsilon = 1e-9;
constexpr double kHeadOnEpsilon = 1e-6;  // m/s lateral nudge for exact head-on approach

// Optimum on line `line_no` subject to lines [0, line_no) and the speed disc.
bool linear_program1(const std::vector<OrcaLine>& lines, std::size_t line_no, double radius,
                     const Vec2& opt_velocity, bool direction_opt, Vec2& result) {
  const OrcaLine& line = lines[line_no];
  const double dot_product = dot(line.point, line.direction);
  const double discriminant = dot_product * dot_product + radius * radius - norm_sq(line.point);
  if (discriminant < 0.0) return false;  // speed disc fully invalidates this line

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);

    if (std::abs(denominator) <= kLpEpsilon) {
      if (numerator < 0.0) return false;  // parallel and infeasible
      continue;
    }

    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = dot(opt_velocity, line.direction) > 0.0 ? line.point + t_right * line.direction
                                                     : line.point + t_left * line.direction;
  } else {
    const double t = dot(line.direction, opt_velocity - line.point);
    result = line.point + std::clamp(t, t_left, t_right) * line.direction;
  }
  return true;
}

// Returns the index of the first line that could not be satisfied, or lines.size().
std::size_t linear_program2(const std::vector<OrcaLine>& lines, double radius,
                            const Vec2& opt_velocity, bool direction_opt, Vec2& result) {
  if (direction_opt) {
    result = opt_velocity * radius;
  } else if (norm_sq(opt_velocity) > radius * radius) {
    result = normalized(opt_velocity) * radius;
  } else {
    result = opt_velocity;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].violation(result) > 0.0) {
      const Vec2 previous = result;
      if (!linear_program1(lines, i, radius, opt_velocity, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Minimizes the maximum violation of the agent lines, keeping obstacle lines hard.
void linear_program3(const std::vector<OrcaLine>& lines, std::size_t num_obstacle_lines,
                     std::size_t begin_line, double radius, Vec2& result) {
  double distance = 0.0;

  for (std::size_t i = begin_line; i < lines.size(); ++i) {
    if (lines[i].violation(result) <= distance) continue;

    std::vector<OrcaLine> projected(lines.begin(),
                                    lines.begin() + static_cast<std::ptrdiff_t>(num_obstacle_lines));
    for (std::size_t j = num_obstacle_lines; j < i; ++j) {
      OrcaLine line;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::abs(determinant) <= kLpEpsilon) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;  // same direction
        line.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        line.point = lines[i].point +
                     (det(lines[j].direction, lines[i].point - lines[j].point) / determinant) *
                         lines[i].direction;
      }
      line.direction = normalized(lines[j].direction - lines[i].direction);
      projected.push_back(line);
    }

    const Vec2 previous = result;
    if (linear_program2(projected, radius, perp_left(lines[i].direction), true, result) <
        projected.size()) {
      // Only reachable through floating-point error; keep the previous result.
      result = previous;
    }
    distance = lines[i].violation(result);
  }
}

// Velocity-obstacle half-plane for a disc at `relative_position` moving with
// relative velocity `relative_velocity`, truncated at `horizon`. `share` is the
// fraction of the required change this agent takes on. Overlapping pairs get a
// constraint that resolves the overlap within one `step`.
OrcaLine vo_line(const Vec2& velocity, Vec2 relative_velocity, const Vec2& relative_position,
                 double combined_radius, double horizon, double share, double step) {
  const double dist_sq = norm_sq(relative_position);
  const double combined_sq = combined_radius * combined_radius;
  const double inv_horizon = 1.0 / horizon;

  // Exact head-on approach leaves the leg choice to a measure-zero tie; nudge
  // the relative velocity to the agent's left so the outcome is deterministic.
  if (det(relative_position, relative_velocity) == 0.0 &&
      dot(relative_position, relative_velocity) > 0.0) {
    relative_velocity += kHeadOnEpsilon * normalized(perp_left(relative_velocity));
  }

  OrcaLine line;
  Vec2 u;
  const Vec2 w = relative_velocity - inv_horizon * relative_position;
  const double w_len_sq = norm_sq(w);
  const double dot_product = dot(w, relative_position);

  if (dist_sq <= combined_sq) {
    const Vec2 w_step = relative_velocity - (1.0 / step) * relative_position;
    const double len = norm(w_step);
    const Vec2 unit_w = len > 0.0 ? w_step / len : Vec2{1.0, 0.0};
    line.direction = {unit_w.y, -unit_w.x};
    u = (combined_radius / step - len) * unit_w;
  } else if (dot_product < 0.0 && dot_product * dot_product > combined_sq * w_len_sq) {
    // Project on the cut-off circle.
    const double w_len = std::sqrt(w_len_sq);
    const Vec2 unit_w = w / w_len;
    line.direction = {unit_w.y, -unit_w.x};
    u = (combined_radius * inv_horizon - w_len) * unit_w;
  } else {
    const double leg = std::sqrt(dist_sq - combined_sq);
    if (det(relative_position, w) > 0.0) {
      // Left leg.
      line.direction = Vec2{relative_position.x * leg - relative_position.y * combined_radius,
                            relative_position.x * combined_radius + relative_position.y * leg} /
                       dist_sq;
    } else {
      // Right leg.
      line.direction = -Vec2{relative_position.x * leg + relative_position.y * combined_radius,
                             -relative_position.x * combined_radius + relative_position.y * leg} /
                       dist_sq;
    }
    u = dot(relative_velocity, line.direction) * line.direction - relative_velocity;
  }

  line.point = velocity + share * u;
  return line;
}

}  // namespace

std::vector<OrcaLine> build_orca_lines(const AgentDisc& self, std::span<const AgentDisc> neighbors,
                                       std::span<const Circle> obstacles,
                                       const OrcaParams& params, std::size_t* num_obstacle_lines) {
  std::vector<OrcaLine> lines;
  lines.reserve(obstacles.size() + neighbors.size());

  const double obstacle_range = params.time_horizon_obstacles * self.max_speed + self.radius;
  for (const Circle& c : obstacles) {
    const Vec2 rel = c.center - self.position;
    if (norm(rel) - c.radius > obstacle_range) continue;
    lines.push_back(vo_line(self.velocity, self.velocity, rel, self.radius + c.radius,
                            params.time_horizon_obstacles, 1.0, params.dt));
  }
  if (num_obstacle_lines) *num_obstacle_lines = lines.size();

  // Nearest max_neighbors within neighbor_distance; ties keep input order.
  std::vector<std::pair<double, std::size_t>> order;
  const double range_sq = params.neighbor_distance * params.neighbor_distance;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const double d_sq = norm_sq(neighbors[i].position - self.position);
    if (d_sq < range_sq) order.emplace_back(d_sq, i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  if (order.size() > static_cast<std::size_t>(std::max(params.max_neighbors, 0))) {
    order.resize(static_cast<std::size_t>(params.max_neighbors));
  }
  for (const auto& [d_sq, i] : order) {
    const AgentDisc& other = neighbors[i];
    lines.push_back(vo_line(self.velocity, self.velocity - other.velocity,
                            other.position - self.position, self.radius + other.radius,
                            params.time_horizon_agents, params.reciprocity, params.dt));
  }
  return lines;
}

OrcaResult orca_velocity(const AgentDisc& self, std::span<const AgentDisc> neighbors,
                         std::span<const Circle> obstacles, const Vec2& preferred_velocity,
                         const OrcaParams& params) {
  // Overlap: push straight away from the deepest intrusion.
  double deepest = 0.0;
  Vec2 away;
  auto consider = [&](const Vec2& center, double combined) {
    const Vec2 rel = self.position - center;
    const double depth = combined - norm(rel);
    if (depth > deepest) {
      deepest = depth;
      away = norm_sq(rel) > 0.0 ? normalized(rel)
             : norm_sq(preferred_velocity) > 0.0 ? normalized(perp_left(preferred_velocity))
                                                 : Vec2{1.0, 0.0};
    }
  };
  for (const Circle& c : obstacles) consider(c.center, self.radius + c.radius);
  for (const AgentDisc& n : neighbors) consider(n.position, self.radius + n.radius);
  if (deepest > 0.0) return {away * self.max_speed, true};

  std::size_t num_obstacle_lines = 0;
  const auto lines = build_orca_lines(self, neighbors, obstacles, params, &num_obstacle_lines);

  Vec2 result;
  const std::size_t fail = linear_program2(lines, self.max_speed, preferred_velocity, false, result);
  if (fail < lines.size()) linear_program3(lines, num_obstacle_lines, fail, self.max_speed, result);
  return {result, false};
}

Vec2 preferred_velocity_toward(const Vec2& position, const Vec2& goal, double speed, double dt) {
  const Vec2 to_goal = goal - position;
  const double dist = norm(to_goal);
  if (dist <= speed * dt) return to_goal / dt;
  return to_goal * (speed / dist);
}

CrowdState step_crowd(const CrowdState& crowd, const std::optional<EgoNeighbor>& ego,
                      std::span<const Circle> obstacles, const OrcaParams& params) {
  CrowdState next = crowd;
  auto& peds = next.pedestrians;
  const std::size_t n = peds.size();

  // Re-goal pedestrians that arrived, avoiding goals buried in obstacles.
  for (auto& p : peds) {
    if (norm(p.goal - p.position) > next.goal_tolerance) continue;
    const double h = next.goal_half_extent;
    for (int attempt = 0; attempt < 100; ++attempt) {
      p.goal = {next.rng.uniform(-h, h), next.rng.uniform(-h, h)};
      const bool blocked = std::any_of(obstacles.begin(), obstacles.end(), [&](const Circle& c) {
        return norm(p.goal - c.center) < c.radius + p.radius;
      });
      if (!blocked) break;
    }
  }

  std::vector<AgentDisc> discs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = crowd.pedestrians[i];
    discs[i] = {p.position, p.velocity, p.radius, p.preferred_speed};
  }
  std::optional<AgentDisc> ego_disc;
  if (ego) {
    const Vec2 heading{std::cos(ego->pose.heading), std::sin(ego->pose.heading)};
    ego_disc = AgentDisc{ego->pose.position, ego->speed * heading, ego->radius, ego->speed};
  }

  std::vector<Vec2> new_velocity(n);
  std::vector<AgentDisc> neighbors;
  neighbors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    neighbors.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) neighbors.push_back(discs[j]);
    }
    if (ego_disc && pedestrian_sees_ego(norm(discs[i].velocity), ego->speed)) {
      neighbors.push_back(*ego_disc);
    }
    const Vec2 pref =
        preferred_velocity_toward(peds[i].position, peds[i].goal, peds[i].preferred_speed, params.dt);
    new_velocity[i] = orca_velocity(discs[i], neighbors, obstacles, pref, params).velocity;
  }

  const double noise = next.velocity_noise;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 v = new_velocity[i];
    if (next.noise_enabled && noise > 0.0) {
      v.x += next.rng.uniform(-noise, noise);
      v.y += next.rng.uniform(-noise, noise);
      const double cap = peds[i].preferred_speed + noise * std::numbers::sqrt2;
      const double speed = norm(v);
      if (speed > cap) v = v * (cap / speed);
    }
    peds[i].velocity = v;
    peds[i].position += v * params.dt;
  }
  return next;
}

}  // namespace socnav
