#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socnav/baselines.hpp"
#include "socnav/scenario.hpp"

namespace socnav {

enum class TrialStatus { arrival, collision, timeout, failure };

std::string_view to_string(TrialStatus s);

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::failure;
  int steps = 0;
  double nav_time_s = 0.0;
  double min_separation = 0.0;
  bool geometric_collision = false;
  int dwa_escapes = 0;
  std::uint64_t spawn_hash = 0;
  std::string error;  // only for failures
};

/// Aggregate over a batch. Rates partition the trials:
/// sr + cr + tr + failure_rate == 1. Navigation time covers arrivals only.
struct MetricsReport {
  int n_trials = 0;
  double sr = 0.0;
  double cr = 0.0;
  double tr = 0.0;
  double failure_rate = 0.0;
  int n_success = 0;
  std::optional<double> nt_mean_s;  // empty when nothing arrived
  std::optional<double> nt_std_s;   // population std
  int geometric_collisions = 0;     // diagnostic: trials where the bodies overlapped
  std::string policy;
  std::string config_digest;
  std::uint64_t base_seed = 0;
  std::vector<TrialOutcome> per_seed_outcomes;  // ordered by trial index
};

/// Runs one trial; seed = base_seed + trial. Never throws for policy errors.
TrialOutcome run_trial(const ScenarioConfig& config, const PolicySpec& policy, int trial,
                       std::uint64_t base_seed);

/// Trials are independent and run on `threads` workers (0 = hardware
/// concurrency); results are reduced in trial order, so output does not
/// depend on the thread count. Throws ConfigError when n_trials < 1.
MetricsReport run_benchmark(const ScenarioConfig& config, const PolicySpec& policy, int n_trials,
                            std::uint64_t base_seed, unsigned threads = 0);

MetricsReport summarize(std::vector<TrialOutcome> outcomes, const ScenarioConfig& config,
                        const PolicySpec& policy, std::uint64_t base_seed);

/// {n_trials, sr, cr, tr, nt_mean_s, nt_std_s, policy, config_digest, base_seed, ...}
std::string metrics_to_json(const MetricsReport& report);
std::string metrics_table(const MetricsReport& report);

/// Planner parameters block: {"dwa": {...}, "orca": {...}}.
/// Unknown keys raise ConfigError.
PolicySpec parse_policy_params(PolicyKind kind, const std::string& json_text);

}  // namespace socnav
