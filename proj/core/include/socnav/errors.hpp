#pragma once

#include <stdexcept>
#include <string>

namespace socnav {

/// Malformed or out-of-range configuration (bad JSON, unknown key, invalid range).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection sampling could not place a body within the attempt budget.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse such as stepping a finished episode.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A policy threw while acting; carries the step at which it failed.
class PolicyError : public std::runtime_error {
 public:
  PolicyError(int step, const std::string& what)
      : std::runtime_error("policy failed at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace socnav
