#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmlab/datagen.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

struct ConvergenceCriterion {
  enum class Kind : std::uint8_t {
    // Every automaton has the target action and sits at the deepest state of
    // that action's side (1 for Include, 2N for Exclude). A fresh machine
    // starts at the boundary, so this cannot hold after a single step.
    TargetProfile,
    // The machine classifies every admissible input correctly, at least
    // `target` clauses fire on each positive input, and no clause fires on
    // any negative input (inference semantics).
    TruthTable,
    // The action profile has not changed for `window` consecutive steps.
    ActionStability,
  };

  Kind kind = Kind::TruthTable;
  std::vector<ActionKind> profile;  // TargetProfile; length m * 2o
  int window = 0;                   // ActionStability
};

struct ExperimentConfig {
  MachineConfig machine;
  OperatorSpec op;
  int trials = 1;
  long max_steps = 1;
  std::uint64_t base_seed = 0;
  ConvergenceCriterion convergence;
  unsigned threads = 0;  // 0 picks the hardware concurrency

  // Throws ConfigError; also validates the machine block.
  void validate() const;
};

struct TrialResult {
  std::uint64_t seed = 0;
  bool converged = false;
  long steps = 0;  // steps to convergence, or the budget when not converged
  std::string profile;  // final action profile, e.g. "IEIE"
};

struct ExperimentReport {
  std::vector<TrialResult> trials;
  int converged_count = 0;
  double convergence_fraction = 0.0;
  long p50_steps = 0;  // nearest-rank quantiles over all per-trial steps
  long p90_steps = 0;
  long max_steps = 0;
  std::vector<std::string> warnings;
};

// TargetProfile predicate: every automaton saturated at the deep end of its
// target action.
bool target_profile_reached(const TsetlinMachine& machine,
                            const std::vector<ActionKind>& profile);

// TruthTable predicate, clause-level: correct classification everywhere, at
// least `target` clauses firing on each positive input, none on a negative.
bool truth_table_reached(const TsetlinMachine& machine, const OperatorSpec& op);

// One seeded trial: a fresh boundary-initialized machine trained for at most
// max_steps samples, with the criterion checked after every step. The trial
// seed is base_seed + trial_index; the random stream is consumed in the
// order: boundary init draws, then per step one sample draw followed by the
// train_step draws.
TrialResult run_trial(const ExperimentConfig& config, int trial_index);

// Runs all trials (in parallel when threads != 1) and aggregates in trial
// order. Reruns with the same config are byte-identical.
ExperimentReport run_batch(const ExperimentConfig& config);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace tmlab
