#pragma once

#include <cstdint>
#include <stdexcept>

namespace tmlab {

enum class ActionKind : std::uint8_t { Include, Exclude };

inline char action_letter(ActionKind a) {
  return a == ActionKind::Include ? 'I' : 'E';
}

// One two-action learning automaton: a chain of 2N states where 1..N select
// Include and N+1..2N select Exclude. State 1 is the deepest Include, 2N the
// deepest Exclude.
struct AutomatonState {
  int states_per_action = 1;  // N
  int state = 1;              // in [1, 2N]
};

inline bool is_valid(const AutomatonState& a) {
  return a.states_per_action >= 1 && a.state >= 1 &&
         a.state <= 2 * a.states_per_action;
}

inline AutomatonState make_automaton(int states_per_action, int state) {
  AutomatonState a{states_per_action, state};
  if (!is_valid(a)) {
    throw std::invalid_argument("automaton state out of range");
  }
  return a;
}

inline ActionKind action(const AutomatonState& a) {
  return a.state <= a.states_per_action ? ActionKind::Include
                                        : ActionKind::Exclude;
}

// Rewards deepen the current action; the chain ends self-loop.
inline AutomatonState apply_reward(AutomatonState a) {
  if (a.state <= a.states_per_action) {
    if (a.state > 1) --a.state;
  } else {
    if (a.state < 2 * a.states_per_action) ++a.state;
  }
  return a;
}

// Penalties move toward the opposite action, crossing at the N/N+1 boundary.
inline AutomatonState apply_penalty(AutomatonState a) {
  if (a.state <= a.states_per_action) {
    ++a.state;
  } else {
    --a.state;
  }
  return a;
}

}  // namespace tmlab
