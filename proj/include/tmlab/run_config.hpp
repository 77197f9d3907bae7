#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tmlab/experiments.hpp"

namespace tmlab {

// A fully resolved run configuration file. The on-disk form is a JSON
// document with the sections
//
//   machine    {o?, m?, n?, s?, t?, th?, gating?}
//   operator   {name, weights?}          (required)
//   experiment {trials, max_steps, seed, convergence?}
//   output     {dir?, formats?}
//
// Unknown keys are rejected anywhere. `s` and weight values accept integers,
// strings like "7/2", and the few floats with an exact small binary
// representation (0.25 and friends). `o` defaults to the operator width,
// `th` to `t`.
struct RunConfig {
  MachineConfig machine;
  OperatorSpec op;
  bool has_experiment = false;
  ExperimentConfig experiment;  // valid when has_experiment
  std::string out_dir;                      // may be empty
  std::vector<std::string> formats{"json", "csv"};
};

RunConfig parse_run_config(const nlohmann::json& doc);

// Reads and parses a file; malformed JSON or I/O trouble become ConfigError.
RunConfig load_run_config(const std::string& path);

// The config echoed into every output directory: all defaults filled in.
nlohmann::ordered_json resolved_config_json(const RunConfig& config);

}  // namespace tmlab
