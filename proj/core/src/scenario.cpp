#include "socnav/scenario.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "socnav/errors.hpp"
#include "socnav/rng.hpp"

namespace socnav {
namespace {

using nlohmann::json;

constexpr int kMaxPlacementAttempts = 10000;
constexpr double kObstacleClearance = 0.5;  // m free space around start and goal
constexpr double kObstacleGap = 0.6;        // m between obstacles, passable for the ego
constexpr double kPedEgoClearance = 1.0;    // m between a pedestrian and the ego start
constexpr double kPedGap = 0.1;             // m between pedestrians and other bodies

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + key + ": " + e.what());
  }
}

template <typename T>
void read_range(const json& j, const char* key, Range<T>& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string(key) + ": expected [min, max]");
  }
  if constexpr (std::is_integral_v<T>) {
    if (!v[0].is_number_integer() || !v[1].is_number_integer()) {
      throw ConfigError(std::string(key) + ": expected integer [min, max]");
    }
  }
  out = {v[0].get<T>(), v[1].get<T>()};
}

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw ConfigError(field + ": " + rule);
}

template <typename T>
json range_json(const Range<T>& r) {
  return json::array({r.min, r.max});
}

void hash_bytes(std::uint64_t& h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xFFU;
    h *= 1099511628211ULL;
  }
}

void hash_double(std::uint64_t& h, double v) { hash_bytes(h, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.arena_half_extent > kStartGoalInset, "arena_half_extent", "must exceed 1 m");
  require(c.n_obstacles_range.min >= 0 && c.n_obstacles_range.min <= c.n_obstacles_range.max,
          "n_obstacles_range", "must satisfy 0 <= min <= max");
  require(c.n_pedestrians_range.min >= 0 && c.n_pedestrians_range.min <= c.n_pedestrians_range.max,
          "n_pedestrians_range", "must satisfy 0 <= min <= max");
  require(c.obstacle_radius_range.min > 0.0 &&
              c.obstacle_radius_range.min <= c.obstacle_radius_range.max,
          "obstacle_radius_range", "must satisfy 0 < min <= max");
  require(c.obstacle_position_noise >= 0.0, "obstacle_position_noise", "must be >= 0");
  require(c.pedestrian_velocity_noise >= 0.0, "pedestrian_velocity_noise", "must be >= 0");
  require(c.goal_min_distance >= 0.0, "goal_min_distance", "must be >= 0");
  require(c.timeout_steps > 0, "timeout_steps", "must be > 0");
  require(c.pedestrian_speed_range.min > 0.0 &&
              c.pedestrian_speed_range.min <= c.pedestrian_speed_range.max,
          "pedestrian_speed_range", "must satisfy 0 < min <= max");
  require(c.pedestrian_radius > 0.0, "pedestrian_radius", "must be > 0");
  require(c.max_range > 0.0, "max_range", "must be > 0");
  require(c.reward.r_robot > 0.0, "reward.r_robot", "must be > 0");
  require(c.reward.r_dis > 0.0, "reward.r_dis", "must be > 0");
  require(c.limits.v_max > 0.0, "limits.v_max", "must be > 0");
  require(c.limits.w_max > 0.0, "limits.w_max", "must be > 0");
  require(c.limits.dt > 0.0, "limits.dt", "must be > 0");
}

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j,
             {"arena_half_extent", "n_obstacles_range", "n_pedestrians_range",
              "obstacle_radius_range", "obstacle_position_noise", "pedestrian_velocity_noise",
              "goal_min_distance", "timeout_steps", "seed", "unified_mode", "noise_enabled",
              "pedestrian_speed_range", "pedestrian_radius", "max_range", "reward", "limits"},
             "config");

  ScenarioConfig c;
  read(j, "arena_half_extent", c.arena_half_extent, "");
  read_range(j, "n_obstacles_range", c.n_obstacles_range);
  read_range(j, "n_pedestrians_range", c.n_pedestrians_range);
  read_range(j, "obstacle_radius_range", c.obstacle_radius_range);
  read(j, "obstacle_position_noise", c.obstacle_position_noise, "");
  read(j, "pedestrian_velocity_noise", c.pedestrian_velocity_noise, "");
  read(j, "goal_min_distance", c.goal_min_distance, "");
  read(j, "timeout_steps", c.timeout_steps, "");
  read(j, "seed", c.seed, "");
  read(j, "unified_mode", c.unified_mode, "");
  read(j, "noise_enabled", c.noise_enabled, "");
  read_range(j, "pedestrian_speed_range", c.pedestrian_speed_range);
  read(j, "pedestrian_radius", c.pedestrian_radius, "");
  read(j, "max_range", c.max_range, "");

  if (j.contains("reward")) {
    const json& r = j.at("reward");
    check_keys(r, {"r_robot", "r_dis", "w_dis", "w_goal", "w_ang", "terminal_bonus",
                   "collision_penalty"},
               "reward");
    read(r, "r_robot", c.reward.r_robot, "reward.");
    read(r, "r_dis", c.reward.r_dis, "reward.");
    read(r, "w_dis", c.reward.w_dis, "reward.");
    read(r, "w_goal", c.reward.w_goal, "reward.");
    read(r, "w_ang", c.reward.w_ang, "reward.");
    read(r, "terminal_bonus", c.reward.terminal_bonus, "reward.");
    read(r, "collision_penalty", c.reward.collision_penalty, "reward.");
  }
  if (j.contains("limits")) {
    const json& l = j.at("limits");
    check_keys(l, {"v_max", "w_max", "dt"}, "limits");
    read(l, "v_max", c.limits.v_max, "limits.");
    read(l, "w_max", c.limits.w_max, "limits.");
    read(l, "dt", c.limits.dt, "limits.");
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_json(const ScenarioConfig& c) {
  json j;
  j["arena_half_extent"] = c.arena_half_extent;
  j["n_obstacles_range"] = range_json(c.n_obstacles_range);
  j["n_pedestrians_range"] = range_json(c.n_pedestrians_range);
  j["obstacle_radius_range"] = range_json(c.obstacle_radius_range);
  j["obstacle_position_noise"] = c.obstacle_position_noise;
  j["pedestrian_velocity_noise"] = c.pedestrian_velocity_noise;
  j["goal_min_distance"] = c.goal_min_distance;
  j["timeout_steps"] = c.timeout_steps;
  j["seed"] = c.seed;
  j["unified_mode"] = c.unified_mode;
  j["noise_enabled"] = c.noise_enabled;
  j["pedestrian_speed_range"] = range_json(c.pedestrian_speed_range);
  j["pedestrian_radius"] = c.pedestrian_radius;
  j["max_range"] = c.max_range;
  j["reward"] = {{"r_robot", c.reward.r_robot},
                 {"r_dis", c.reward.r_dis},
                 {"w_dis", c.reward.w_dis},
                 {"w_goal", c.reward.w_goal},
                 {"w_ang", c.reward.w_ang},
                 {"terminal_bonus", c.reward.terminal_bonus},
                 {"collision_penalty", c.reward.collision_penalty}};
  j["limits"] = {{"v_max", c.limits.v_max}, {"w_max", c.limits.w_max}, {"dt", c.limits.dt}};
  return j.dump(2);
}

std::string config_digest(const ScenarioConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_json(config))));
  return buf;
}

std::uint64_t crowd_seed(std::uint64_t seed) { return mix_seed(seed, 1); }

Layout sample_layout(const ScenarioConfig& config, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0));
  Layout layout;
  const double h = config.arena_half_extent;
  const double a = h - kStartGoalInset;
  const double r_ego = config.reward.r_robot;

  // Start and goal on opposite sides; the side pair is drawn, then both points.
  {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      const int side = rng.uniform_int(0, 3);
      const double rot = side * std::numbers::pi / 2.0;
      const Vec2 start = rotate({-a, rng.uniform(-a, a)}, rot);
      const Vec2 goal = rotate({a, rng.uniform(-a, a)}, rot);
      if (norm(goal - start) < config.goal_min_distance) continue;
      const Vec2 to_goal = goal - start;
      layout.ego_start = Pose2(start, std::atan2(to_goal.y, to_goal.x));
      layout.goal = goal;
      placed = true;
    }
    if (!placed) {
      throw ScenarioError("could not place start/goal: goal_min_distance unreachable after " +
                          std::to_string(kMaxPlacementAttempts) + " attempts");
    }
  }
  const Vec2 start = layout.ego_start.position;

  const int n_obstacles =
      rng.uniform_int(config.n_obstacles_range.min, config.n_obstacles_range.max);
  for (int k = 0; k < n_obstacles; ++k) {
    std::string violated;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      const double r =
          rng.uniform(config.obstacle_radius_range.min, config.obstacle_radius_range.max);
      const Vec2 c{rng.uniform(-a, a), rng.uniform(-a, a)};
      if (norm(c - start) < r + r_ego + kObstacleClearance) {
        violated = "clearance around ego start";
        continue;
      }
      if (norm(c - layout.goal) < r + r_ego + kObstacleClearance) {
        violated = "clearance around goal";
        continue;
      }
      bool overlaps = false;
      for (const Circle& o : layout.obstacles) {
        if (norm(c - o.center) < r + o.radius + kObstacleGap) overlaps = true;
      }
      if (overlaps) {
        violated = "gap between obstacles";
        continue;
      }
      layout.obstacles.push_back({c, r});
      placed = true;
    }
    if (!placed) {
      throw ScenarioError("could not place obstacle " + std::to_string(k) + ": " + violated +
                          " violated after " + std::to_string(kMaxPlacementAttempts) +
                          " attempts");
    }
  }
  if (config.noise_enabled && config.obstacle_position_noise > 0.0) {
    const double n = config.obstacle_position_noise;
    for (Circle& o : layout.obstacles) {
      o.center.x += rng.uniform(-n, n);
      o.center.y += rng.uniform(-n, n);
    }
  }

  const int n_peds =
      rng.uniform_int(config.n_pedestrians_range.min, config.n_pedestrians_range.max);
  const double r_ped = config.pedestrian_radius;
  for (int k = 0; k < n_peds; ++k) {
    std::string violated;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      PedestrianState p;
      p.radius = r_ped;
      p.preferred_speed =
          rng.uniform(config.pedestrian_speed_range.min, config.pedestrian_speed_range.max);
      p.position = {rng.uniform(-a, a), rng.uniform(-a, a)};
      p.goal = {rng.uniform(-a, a), rng.uniform(-a, a)};
      if (norm(p.position - start) < r_ped + r_ego + kPedEgoClearance) {
        violated = "clearance around ego start";
        continue;
      }
      bool bad = false;
      for (const Circle& o : layout.obstacles) {
        if (norm(p.position - o.center) < r_ped + o.radius + kPedGap) {
          violated = "gap to obstacles";
          bad = true;
        } else if (norm(p.goal - o.center) < r_ped + o.radius) {
          violated = "pedestrian goal inside obstacle";
          bad = true;
        }
      }
      for (const PedestrianState& q : layout.pedestrians) {
        if (norm(p.position - q.position) < r_ped + q.radius + kPedGap) {
          violated = "gap between pedestrians";
          bad = true;
        }
      }
      if (bad) continue;
      layout.pedestrians.push_back(p);
      placed = true;
    }
    if (!placed) {
      throw ScenarioError("could not place pedestrian " + std::to_string(k) + ": " + violated +
                          " violated after " + std::to_string(kMaxPlacementAttempts) +
                          " attempts");
    }
  }
  return layout;
}

std::uint64_t layout_hash(const Layout& layout) {
  std::uint64_t h = 1469598103934665603ULL;
  hash_double(h, layout.ego_start.position.x);
  hash_double(h, layout.ego_start.position.y);
  hash_double(h, layout.ego_start.heading);
  hash_double(h, layout.goal.x);
  hash_double(h, layout.goal.y);
  hash_bytes(h, layout.obstacles.size());
  for (const Circle& c : layout.obstacles) {
    hash_double(h, c.center.x);
    hash_double(h, c.center.y);
    hash_double(h, c.radius);
  }
  hash_bytes(h, layout.pedestrians.size());
  for (const PedestrianState& p : layout.pedestrians) {
    hash_double(h, p.position.x);
    hash_double(h, p.position.y);
    hash_double(h, p.radius);
    hash_double(h, p.preferred_speed);
    hash_double(h, p.goal.x);
    hash_double(h, p.goal.y);
  }
  return h;
}

}  // namespace socnav
