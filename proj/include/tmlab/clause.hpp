#pragma once

#include <cstdint>
#include <vector>

#include "tmlab/automaton.hpp"

namespace tmlab {

using Bit = std::uint8_t;
using InputVector = std::vector<Bit>;

// An empty clause (no literal included) outputs 1 while training and 0 at
// inference time; the two modes agree whenever at least one literal is in.
enum class EvalMode : std::uint8_t { Train, Infer };

// A conjunctive clause as a team of 2o automatons. Literal indices are
// 1-based: index 2k-1 is input x_k, index 2k is its negation.
struct ClauseState {
  std::vector<AutomatonState> tas;  // size 2o

  int input_width() const { return static_cast<int>(tas.size()) / 2; }
};

// Value of literal `literal_index` (1-based, in [1, 2o]) on input x.
Bit literal_value(const InputVector& x, int literal_index);

// Conjunction over the literals whose automaton currently selects Include.
// The include set is recomputed from the automaton actions on every call.
Bit evaluate(const ClauseState& clause, const InputVector& x, EvalMode mode);

}  // namespace tmlab
