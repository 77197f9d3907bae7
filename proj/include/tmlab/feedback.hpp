#pragma once

#include "tmlab/automaton.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/random.hpp"
#include "tmlab/rational.hpp"

namespace tmlab {

enum class FeedbackEvent : std::uint8_t { Reward, Inaction, Penalty };

// Exact reward/inaction/penalty probabilities for one feedback cell. Entries
// are rationals with denominator s (or 0/1) and always sum to exactly 1, so
// the chain analyzer can use them without any tolerance.
struct FeedbackProbs {
  Rational reward;
  Rational inaction;
  Rational penalty;
};

// The (action, clause value, literal value) triple a feedback lookup is
// conditioned on. An included literal with value 0 forces its clause to 0,
// so (Include, clause=1, literal=0) cannot arise from a consistent
// evaluation; constructing it throws InfeasibleContextError.
class FeedbackContext {
 public:
  FeedbackContext(ActionKind action, bool clause_value, bool literal_value)
      : action_(action), clause_(clause_value), literal_(literal_value) {
    if (action_ == ActionKind::Include && clause_ && !literal_) {
      throw InfeasibleContextError(
          "included literal 0 with clause 1: clause evaluation and context "
          "construction disagree");
    }
  }

  ActionKind action() const { return action_; }
  bool clause_value() const { return clause_; }
  bool literal_value() const { return literal_; }

 private:
  ActionKind action_;
  bool clause_;
  bool literal_;
};

// Feedback schedule applied on positive samples (y = 1). Requires s > 1.
FeedbackProbs type_i_probs(const FeedbackContext& ctx, const Rational& s);

// Feedback schedule applied on negative samples (y = 0). The only cell that
// acts is (Exclude, clause=1, literal=0), which penalizes with probability 1.
FeedbackProbs type_ii_probs(const FeedbackContext& ctx);

// Draws one event; consumes exactly one uniform from the source.
FeedbackEvent sample_event(const FeedbackProbs& probs, RandomSource& rng);

}  // namespace tmlab
