#pragma once

#include <stdexcept>
#include <string>

namespace tmlab {

// A feedback context that clause evaluation can never produce was requested.
// Reaching this indicates an engine bug, not bad user input.
class InfeasibleContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid configuration value. Carries the offending field name so the CLI
// can point at it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("field '" + field + "': " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Exact chain analysis was asked for a state space above the configured cap.
class AnalysisTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tmlab
