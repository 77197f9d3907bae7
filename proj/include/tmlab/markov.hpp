#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tmlab/datagen.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

// Exact one-step transition kernel of the training game over the joint
// automaton state space, for a fixed machine config and input distribution.
// Row i is the exact distribution of the next joint state: expectation over
// the input draw, the per-clause gate draws, and the per-automaton event
// draws. Every row sums to exactly 1 (checked at construction).
struct TransitionKernel {
  int arity = 0;              // m * 2o coordinates
  int states_per_action = 0;  // N; each coordinate ranges over [1, 2N]
  // rows[i]: (successor id, probability), sorted by successor id.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;

  std::size_t size() const { return rows.size(); }
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// Dense id of a joint state: coordinate 0 (clause 0, literal 1) is the least
// significant digit in base 2N. Bijective on [0, (2N)^arity).
std::size_t encode_joint_state(const std::vector<int>& states, int states_per_action);
std::vector<int> decode_joint_state(std::size_t id, int arity, int states_per_action);

// Number of joint states, or AnalysisTooLargeError naming the dimensions
// when (2N)^(m*2o) exceeds the cap.
std::size_t joint_state_count(const MachineConfig& config, std::size_t state_cap);

TransitionKernel build_kernel(const MachineConfig& config,
                              const OperatorSpec& spec,
                              std::size_t state_cap = kDefaultStateCap);

// Strongly connected components of the positive-probability transition graph
// that have no outgoing edge. Members sorted ascending; classes ordered by
// their minimal member id.
std::vector<std::vector<std::size_t>> closed_classes(const TransitionKernel& kernel);

// Probability of eventually entering `target` (which must be one of the
// kernel's closed classes) from each state: 1 on the target, 0 on other
// closed classes, and the solution of the first-step linear system on
// transient states. The solve is double precision with a residual check
// tighter than 1e-10.
std::vector<double> absorption_probabilities(const TransitionKernel& kernel,
                                             const std::vector<std::size_t>& target);

// Action profile of a joint state, e.g. "IEIE" (clauses joined with '|').
std::string state_profile(std::size_t id, int arity, int states_per_action,
                          int clause_count);

struct ClosedClassInfo {
  std::vector<std::size_t> states;
  // Uniform action profile of the members, or "(varies)" when the class
  // spans more than one profile.
  std::string action_profile;
};

struct ChainReport {
  std::size_t state_count = 0;
  int arity = 0;
  int states_per_action = 0;
  int clause_count = 0;
  std::vector<ClosedClassInfo> classes;
  // absorption[c][i]: probability of ending in class c from state i.
  std::vector<std::vector<double>> absorption;
};

ChainReport analyze_chain(const MachineConfig& config, const OperatorSpec& spec,
                          std::size_t state_cap = kDefaultStateCap);

// Absorption probabilities serialize as decimal strings with 12 significant
// digits.
nlohmann::ordered_json chain_report_to_json(const ChainReport& report);

// ---------------------------------------------------------------------------
// Conditional view: the transitions of a single automaton when the actions of
// all four automatons of a one-clause, two-input machine are pinned and one
// labeled sample is presented. This is the micro-diagram level of analysis;
// probabilities are conditional on the feedback gate having fired.

struct ConditionTransition {
  FeedbackEvent event;   // Reward or Penalty; inaction is omitted
  Rational probability;  // with the given s substituted
  ActionKind toward;     // where the move points: deeper Include or Exclude
};

// `actions` holds the current actions of TA1..TA4; `target_ta` is 1-based.
std::vector<ConditionTransition> condition_transitions(
    const std::array<ActionKind, 4>& actions, int target_ta,
    const Sample& sample, const Rational& s);

// Frozen actions of the first-bit pair (TA1, TA2).
enum class FrozenCase : int {
  Case1 = 1,  // TA1=E, TA2=I: the clause carries ¬x1
  Case2,      // TA1=I, TA2=E: the clause carries x1
  Case3,      // TA1=E, TA2=E: x1 does not appear
  Case4,      // TA1=I, TA2=I: the clause is constantly 0
};

// Current actions of the studied pair (TA3, TA4).
enum class Scenario : int {
  Scenario1 = 1,  // TA3=I, TA4=I
  Scenario2,      // TA3=I, TA4=E
  Scenario3,      // TA3=E, TA4=I
  Scenario4,      // TA3=E, TA4=E
};

std::array<ActionKind, 2> frozen_case_actions(FrozenCase c);
std::array<ActionKind, 2> scenario_actions(Scenario sc);

enum class Drift : std::uint8_t { TowardInclude, TowardExclude, Mixed };

std::string drift_name(Drift d);

struct PairDrift {
  Drift ta3;
  Drift ta4;
};

// Aggregates condition_transitions over every admissible sample of the
// distribution: a studied automaton drifts toward an action when all of its
// non-inaction events point there, and is Mixed otherwise.
PairDrift direction_summary(FrozenCase frozen_case, Scenario scenario,
                            const OperatorSpec& spec, const Rational& s);

// DOT rendering of one condition: the target automaton's chain states in
// Include/Exclude clusters, reward edges dashed, penalty edges solid, each
// labeled with its exact probability. Deterministic byte-for-byte.
std::string condition_diagram_dot(const std::array<ActionKind, 4>& actions,
                                  int target_ta, const Sample& sample,
                                  const Rational& s, int states_per_action);

}  // namespace tmlab
