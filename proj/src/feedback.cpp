#include "tmlab/feedback.hpp"

namespace tmlab {

FeedbackProbs type_i_probs(const FeedbackContext& ctx, const Rational& s) {
  if (s <= Rational(1)) {
    throw std::invalid_argument("type_i_probs: s must be > 1");
  }
  const Rational frequent = (s - Rational(1)) / s;  // (s-1)/s
  const Rational rare = Rational(1) / s;            // 1/s

  if (ctx.action() == ActionKind::Include) {
    if (ctx.clause_value()) {
      // literal is necessarily 1 here
      return {frequent, rare, Rational(0)};
    }
    return {Rational(0), frequent, rare};
  }
  // Exclude
  if (ctx.clause_value() && ctx.literal_value()) {
    return {Rational(0), rare, frequent};
  }
  return {rare, frequent, Rational(0)};
}

FeedbackProbs type_ii_probs(const FeedbackContext& ctx) {
  if (ctx.action() == ActionKind::Exclude && ctx.clause_value() &&
      !ctx.literal_value()) {
    return {Rational(0), Rational(0), Rational(1)};
  }
  return {Rational(0), Rational(1), Rational(0)};
}

FeedbackEvent sample_event(const FeedbackProbs& probs, RandomSource& rng) {
  const double u = rng.next_unit();
  if (u < probs.reward.to_double()) return FeedbackEvent::Reward;
  if (u < (probs.reward + probs.inaction).to_double()) {
    return FeedbackEvent::Inaction;
  }
  return FeedbackEvent::Penalty;
}

}  // namespace tmlab
