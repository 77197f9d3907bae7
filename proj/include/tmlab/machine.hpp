#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tmlab/clause.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/feedback.hpp"
#include "tmlab/random.hpp"
#include "tmlab/rational.hpp"

namespace tmlab {

// AlwaysFire replaces the vote-target gate with probability 1; useful for
// chain analysis of the ungated dynamics.
enum class GatingMode : std::uint8_t { Gated, AlwaysFire };

struct MachineConfig {
  int input_width = 2;          // o
  int clause_count = 1;         // m
  int states_per_action = 100;  // n
  Rational specificity{4};      // s, must be > 1
  int target = 1;               // t, must satisfy 1 <= t <= m
  int threshold = 1;            // th
  GatingMode gating = GatingMode::Gated;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct Sample {
  InputVector x;
  Bit y = 0;
};

// Everything one training step decided, for tests to inspect. Clause values
// and the vote sum are the pre-step snapshot the feedback was based on.
struct StepTrace {
  int vote_sum = 0;
  Rational gate_probability;
  std::vector<Bit> clause_values;                  // per clause, Train mode
  std::vector<Bit> gate_fired;                     // per clause
  std::vector<std::vector<FeedbackEvent>> events;  // [clause][ta]; empty row
                                                   // when the gate stayed shut
  bool any_action_changed = false;
};

// Probability of generating feedback for one clause, given the label and the
// clamped vote sum: (t - clamp(f)) / 2t on positive samples and
// (t + clamp(f)) / 2t on negative ones.
Rational feedback_probability(Bit y, int vote_sum, int target);

// Single-class machine with positive-polarity clauses only.
//
// Draw-order contract (tests depend on it): one uniform per clause for the
// gates, in clause index order (consumed in AlwaysFire mode too); then, for
// each fired clause in index order, exactly one uniform per automaton in
// literal index order. All feedback contexts in a step are built from the
// pre-step states, so updates within a step cannot see each other.
class TsetlinMachine {
 public:
  // Every automaton starts at a uniformly random boundary state (N or N+1),
  // consuming one draw per automaton in clause-major order.
  TsetlinMachine(MachineConfig config, RandomSource& rng);

  // Explicit joint state, clause-major: clause 0's automatons first.
  TsetlinMachine(MachineConfig config, const std::vector<int>& states);

  const MachineConfig& config() const { return config_; }
  const std::vector<ClauseState>& clauses() const { return clauses_; }

  std::vector<int> joint_states() const;
  void set_joint_states(const std::vector<int>& states);

  int vote_sum(const InputVector& x, EvalMode mode) const;
  Bit classify(const InputVector& x) const;

  StepTrace train_step(const Sample& sample, RandomSource& rng);

  // Actions in (clause-major, automaton index) order, length m * 2o.
  std::vector<ActionKind> action_profile() const;

  // "IEIE" for one clause, clauses joined with '|' otherwise.
  std::string profile_string() const;

  // Versioned snapshot; round-trips losslessly.
  nlohmann::ordered_json to_json() const;
  static TsetlinMachine from_json(const nlohmann::json& doc);

 private:
  MachineConfig config_;
  std::vector<ClauseState> clauses_;
};

std::string profile_to_string(const std::vector<ActionKind>& profile,
                              int clause_count);

// Inverse of profile_to_string; '|' separators are optional.
std::vector<ActionKind> parse_profile(const std::string& text);

}  // namespace tmlab
