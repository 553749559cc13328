#include "socnav/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "socnav/errors.hpp"

namespace socnav {

using nlohmann::json;

std::string_view to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::arrival: return "arrival";
    case TrialStatus::collision: return "collision";
    case TrialStatus::timeout: return "timeout";
    case TrialStatus::failure: return "failure";
  }
  return "failure";
}

TrialOutcome run_trial(const ScenarioConfig& config, const PolicySpec& spec, int trial,
                       std::uint64_t base_seed) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = base_seed + static_cast<std::uint64_t>(trial);
  try {
    Environment env(config);
    env.reset(out.seed);
    out.spawn_hash = layout_hash(env.layout());
    auto policy = make_policy(spec, config.limits);
    const EpisodeTrace trace = run_episode(env, *policy);
    switch (trace.terminal) {
      case Terminal::arrival: out.status = TrialStatus::arrival; break;
      case Terminal::collision: out.status = TrialStatus::collision; break;
      case Terminal::timeout: out.status = TrialStatus::timeout; break;
      case Terminal::none: out.status = TrialStatus::failure; break;
    }
    out.steps = trace.steps;
    out.nav_time_s = trace.nav_time_s;
    out.min_separation = trace.min_separation;
    out.geometric_collision = trace.geometric_collision;
    if (const auto* dwa = dynamic_cast<const DwaPolicy*>(policy.get())) out.dwa_escapes = dwa->escapes();
  } catch (const std::exception& e) {
    out.status = TrialStatus::failure;
    out.error = e.what();
  }
  return out;
}

MetricsReport run_benchmark(const ScenarioConfig& config, const PolicySpec& policy, int n_trials,
                            std::uint64_t base_seed, unsigned threads) {
  if (n_trials < 1) throw ConfigError("trials: must be >= 1");
  validate(config);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_trials));

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n_trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n_trials; i = next++) {
      outcomes[static_cast<std::size_t>(i)] = run_trial(config, policy, i, base_seed);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return summarize(std::move(outcomes), config, policy, base_seed);
}

MetricsReport summarize(std::vector<TrialOutcome> outcomes, const ScenarioConfig& config,
                        const PolicySpec& policy, std::uint64_t base_seed) {
  std::sort(outcomes.begin(), outcomes.end(),
            [](const TrialOutcome& a, const TrialOutcome& b) { return a.trial < b.trial; });
  MetricsReport r;
  r.n_trials = static_cast<int>(outcomes.size());
  r.policy = std::string(to_string(policy.kind));
  r.config_digest = config_digest(config);
  r.base_seed = base_seed;

  int arrivals = 0, collisions = 0, timeouts = 0, failures = 0;
  std::vector<double> times;
  for (const auto& o : outcomes) {
    switch (o.status) {
      case TrialStatus::arrival:
        ++arrivals;
        times.push_back(o.nav_time_s);
        break;
      case TrialStatus::collision: ++collisions; break;
      case TrialStatus::timeout: ++timeouts; break;
      case TrialStatus::failure: ++failures; break;
    }
    if (o.geometric_collision) ++r.geometric_collisions;
  }
  const double n = r.n_trials;
  r.sr = arrivals / n;
  r.cr = collisions / n;
  r.tr = timeouts / n;
  r.failure_rate = failures / n;
  r.n_success = arrivals;
  if (!times.empty()) {
    double sum = 0.0;
    for (double t : times) sum += t;
    const double mean = sum / static_cast<double>(times.size());
    double sq = 0.0;
    for (double t : times) sq += (t - mean) * (t - mean);
    r.nt_mean_s = mean;
    r.nt_std_s = std::sqrt(sq / static_cast<double>(times.size()));
  }
  r.per_seed_outcomes = std::move(outcomes);
  return r;
}

std::string metrics_to_json(const MetricsReport& r) {
  auto hex = [](std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
  };
  json outcomes = json::array();
  for (const auto& o : r.per_seed_outcomes) {
    json item = {{"trial", o.trial},
                 {"seed", o.seed},
                 {"terminal", std::string(to_string(o.status))},
                 {"steps", o.steps},
                 {"nav_time_s", o.nav_time_s},
                 {"min_separation", o.min_separation},
                 {"geometric_collision", o.geometric_collision},
                 {"spawn_hash", hex(o.spawn_hash)}};
    if (!o.error.empty()) item["error"] = o.error;
    outcomes.push_back(std::move(item));
  }
  json j = {{"n_trials", r.n_trials},
            {"sr", r.sr},
            {"cr", r.cr},
            {"tr", r.tr},
            {"failure_rate", r.failure_rate},
            {"n_success", r.n_success},
            {"nt_mean_s", r.nt_mean_s ? json(*r.nt_mean_s) : json(nullptr)},
            {"nt_std_s", r.nt_std_s ? json(*r.nt_std_s) : json(nullptr)},
            {"geometric_collisions", r.geometric_collisions},
            {"policy", r.policy},
            {"config_digest", r.config_digest},
            {"base_seed", r.base_seed},
            {"per_seed_outcomes", std::move(outcomes)}};
  return j.dump(2) + "\n";
}

std::string metrics_table(const MetricsReport& r) {
  char buf[512];
  const std::string nt = r.nt_mean_s ? [&] {
    char b[64];
    std::snprintf(b, sizeof b, "%.2f +/- %.2f", *r.nt_mean_s, *r.nt_std_s);
    return std::string(b);
  }()
                                     : std::string("n/a");
  std::snprintf(buf, sizeof buf,
                "%-10s %7s %7s %7s %7s  %s\n%-10s %7.3f %7.3f %7.3f %7.3f  %s\n"
                "trials: %d  base_seed: %llu  geometric collisions: %d  config: %s\n",
                "policy", "SR", "CR", "TR", "FAIL", "NT [s]", r.policy.c_str(), r.sr, r.cr, r.tr,
                r.failure_rate, nt.c_str(), r.n_trials,
                static_cast<unsigned long long>(r.base_seed), r.geometric_collisions,
                r.config_digest.c_str());
  return buf;
}

namespace {

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
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

PolicySpec parse_policy_params(PolicyKind kind, const std::string& json_text) {
  PolicySpec spec;
  spec.kind = kind;
  if (json_text.empty()) return spec;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("params: malformed JSON: ") + e.what());
  }
  check_keys(j, {"dwa", "orca"}, "params");
  if (j.contains("dwa")) {
    const json& d = j.at("dwa");
    check_keys(d, {"v_samples", "w_samples", "horizon", "rollout_dt", "w_heading", "w_clearance",
                   "w_velocity", "clearance_cap", "safety_margin"},
               "params.dwa");
    read(d, "v_samples", spec.dwa.v_samples, "params.dwa");
    read(d, "w_samples", spec.dwa.w_samples, "params.dwa");
    read(d, "horizon", spec.dwa.horizon, "params.dwa");
    read(d, "rollout_dt", spec.dwa.rollout_dt, "params.dwa");
    read(d, "w_heading", spec.dwa.w_heading, "params.dwa");
    read(d, "w_clearance", spec.dwa.w_clearance, "params.dwa");
    read(d, "w_velocity", spec.dwa.w_velocity, "params.dwa");
    read(d, "clearance_cap", spec.dwa.clearance_cap, "params.dwa");
    read(d, "safety_margin", spec.dwa.safety_margin, "params.dwa");
    if (spec.dwa.v_samples < 2 || spec.dwa.w_samples < 2) {
      throw ConfigError("params.dwa: v_samples and w_samples must be >= 2");
    }
    if (spec.dwa.horizon <= 0.0 || spec.dwa.rollout_dt <= 0.0 || spec.dwa.clearance_cap <= 0.0) {
      throw ConfigError("params.dwa: horizon, rollout_dt and clearance_cap must be > 0");
    }
    if (spec.dwa.w_heading < 0.0 || spec.dwa.w_clearance < 0.0 || spec.dwa.w_velocity < 0.0) {
      throw ConfigError("params.dwa: weights must be >= 0");
    }
    if (spec.dwa.safety_margin < 0.0) throw ConfigError("params.dwa: safety_margin must be >= 0");
  }
  if (j.contains("orca")) {
    const json& o = j.at("orca");
    check_keys(o, {"time_horizon_agents", "time_horizon_obstacles", "neighbor_distance",
                   "max_neighbors", "reciprocity", "heading_gain", "safety_margin"},
               "params.orca");
    OrcaParams& op = spec.orca.orca;
    read(o, "time_horizon_agents", op.time_horizon_agents, "params.orca");
    read(o, "time_horizon_obstacles", op.time_horizon_obstacles, "params.orca");
    read(o, "neighbor_distance", op.neighbor_distance, "params.orca");
    read(o, "max_neighbors", op.max_neighbors, "params.orca");
    read(o, "reciprocity", op.reciprocity, "params.orca");
    read(o, "heading_gain", spec.orca.heading_gain, "params.orca");
    read(o, "safety_margin", spec.orca.safety_margin, "params.orca");
    if (op.time_horizon_agents <= 0.0 || op.time_horizon_obstacles <= 0.0 ||
        op.neighbor_distance <= 0.0 || op.max_neighbors < 0 || op.reciprocity < 0.0 ||
        op.reciprocity > 1.0) {
      throw ConfigError("params.orca: horizons and neighbor_distance must be > 0, "
                        "max_neighbors >= 0, reciprocity in [0, 1]");
    }
    if (spec.orca.safety_margin < 0.0) throw ConfigError("params.orca: safety_margin must be >= 0");
  }
  return spec;
}

}  // namespace socnav
