#include <doctest.h>

#include "tmlab/clause.hpp"

using namespace tmlab;

namespace {

// Clause over two inputs with the four automaton actions given directly;
// Include maps to state 1, Exclude to state 2 (n = 1).
ClauseState clause_with_actions(const std::vector<ActionKind>& actions) {
  ClauseState clause;
  for (ActionKind a : actions) {
    clause.tas.push_back({1, a == ActionKind::Include ? 1 : 2});
  }
  return clause;
}

constexpr auto I = ActionKind::Include;
constexpr auto E = ActionKind::Exclude;

}  // namespace

TEST_SUITE_BEGIN("clause");

TEST_CASE("literal values pair x_k with its negation") {
  const InputVector x{1, 0};
  CHECK(literal_value(x, 1) == 1);
  CHECK(literal_value(x, 2) == 0);
  CHECK(literal_value(x, 3) == 0);
  CHECK(literal_value(x, 4) == 1);
  CHECK_THROWS_AS(literal_value(x, 0), std::out_of_range);
  CHECK_THROWS_AS(literal_value(x, 5), std::out_of_range);
}

TEST_CASE("conjunction over included literals") {
  const auto clause = clause_with_actions({I, E, I, E});  // x1 and x2
  CHECK(evaluate(clause, {1, 1}, EvalMode::Train) == 1);
  CHECK(evaluate(clause, {1, 1}, EvalMode::Infer) == 1);
  CHECK(evaluate(clause, {1, 0}, EvalMode::Train) == 0);
  CHECK(evaluate(clause, {0, 1}, EvalMode::Infer) == 0);
}

TEST_CASE("contradictory includes force zero") {
  const auto clause = clause_with_actions({E, I, I, I});  // ¬x1, x2, ¬x2
  CHECK(evaluate(clause, {1, 1}, EvalMode::Train) == 0);
  for (Bit a : {0, 1}) {
    for (Bit b : {0, 1}) {
      CHECK(evaluate(clause, {a, b}, EvalMode::Train) == 0);
      CHECK(evaluate(clause, {a, b}, EvalMode::Infer) == 0);
    }
  }
}

TEST_CASE("empty clause splits by mode") {
  const auto clause = clause_with_actions({E, E, E, E});
  for (Bit a : {0, 1}) {
    for (Bit b : {0, 1}) {
      CHECK(evaluate(clause, {a, b}, EvalMode::Train) == 1);
      CHECK(evaluate(clause, {a, b}, EvalMode::Infer) == 0);
    }
  }
}

TEST_CASE("width mismatch is rejected") {
  const auto clause = clause_with_actions({I, E});
  CHECK_THROWS_AS(evaluate(clause, {1, 0}, EvalMode::Train),
                  std::invalid_argument);
}

TEST_CASE("adding a literal never raises the output") {
  // Exhaustive over all include masks and inputs at o = 2: flipping any
  // excluded automaton to include keeps the output <= the original.
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<ActionKind> actions(4, E);
    for (int t = 0; t < 4; ++t) {
      if ((mask >> t) & 1) actions[static_cast<std::size_t>(t)] = I;
    }
    const auto clause = clause_with_actions(actions);
    for (int input = 0; input < 4; ++input) {
      const InputVector x{static_cast<Bit>(input >> 1),
                          static_cast<Bit>(input & 1)};
      for (int t = 0; t < 4; ++t) {
        if ((mask >> t) & 1) continue;
        auto grown = actions;
        grown[static_cast<std::size_t>(t)] = I;
        const auto bigger = clause_with_actions(grown);
        for (auto mode : {EvalMode::Train, EvalMode::Infer}) {
          CHECK(evaluate(bigger, x, mode) <= evaluate(clause, x, mode));
        }
      }
      // Train and Infer agree whenever anything is included.
      if (mask != 0) {
        CHECK(evaluate(clause, x, EvalMode::Train) ==
              evaluate(clause, x, EvalMode::Infer));
      }
    }
  }
}

TEST_SUITE_END();
