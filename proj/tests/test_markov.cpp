#include <doctest.h>

#include <map>
#include <set>

#include "tmlab/errors.hpp"
#include "tmlab/markov.hpp"

using namespace tmlab;

namespace {

constexpr auto I = ActionKind::Include;
constexpr auto E = ActionKind::Exclude;

MachineConfig analysis_config(int n, long long s = 4,
                              GatingMode gating = GatingMode::AlwaysFire,
                              int clauses = 1) {
  MachineConfig config;
  config.input_width = 2;
  config.clause_count = clauses;
  config.states_per_action = n;
  config.specificity = Rational(s);
  config.target = 1;
  config.threshold = 1;
  config.gating = gating;
  return config;
}

std::size_t id_of(const std::vector<int>& states, int n) {
  return encode_joint_state(states, n);
}

// Reachability-based closed-class detection, independent of the Tarjan path:
// a state is recurrent iff it can return to itself from everything it
// reaches, and recurrent states are grouped by mutual reachability.
std::vector<std::vector<std::size_t>> closed_classes_by_reachability(
    const TransitionKernel& kernel) {
  const std::size_t n = kernel.size();
  std::vector<std::set<std::size_t>> reach(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> frontier{v};
    reach[v].insert(v);
    while (!frontier.empty()) {
      const std::size_t u = frontier.back();
      frontier.pop_back();
      for (const auto& [w, p] : kernel.rows[u]) {
        if (reach[v].insert(w).second) frontier.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> assigned(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (assigned[v]) continue;
    bool recurrent = true;
    for (std::size_t w : reach[v]) {
      if (reach[w].count(v) == 0) {
        recurrent = false;
        break;
      }
    }
    if (!recurrent) continue;
    std::vector<std::size_t> members;
    for (std::size_t w : reach[v]) {
      if (reach[w].count(v) != 0) members.push_back(w);
    }
    for (std::size_t w : members) assigned[w] = true;
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

}  // namespace

TEST_SUITE_BEGIN("markov");

TEST_CASE("joint state ids are a bijection") {
  for (int n : {1, 2, 3}) {
    const int arity = 4;
    std::size_t count = 1;
    for (int i = 0; i < arity; ++i) count *= static_cast<std::size_t>(2 * n);
    std::set<std::size_t> seen;
    std::vector<int> states(arity, 1);
    for (std::size_t id = 0; id < count; ++id) {
      const auto decoded = decode_joint_state(id, arity, n);
      CHECK(encode_joint_state(decoded, n) == id);
      seen.insert(id);
    }
    CHECK(seen.size() == count);
  }
}

TEST_CASE("state cap errors name the dimensions") {
  MachineConfig config = analysis_config(100, 4, GatingMode::Gated, 3);
  CHECK_THROWS_AS(joint_state_count(config, kDefaultStateCap),
                  AnalysisTooLargeError);
  try {
    joint_state_count(config, kDefaultStateCap);
  } catch (const AnalysisTooLargeError& e) {
    const std::string message = e.what();
    CHECK(message.find("n=100") != std::string::npos);
    CHECK(message.find("m=3") != std::string::npos);
    CHECK(message.find("o=2") != std::string::npos);
  }
  CHECK(joint_state_count(analysis_config(1), kDefaultStateCap) == 16);
}

TEST_CASE("kernel rows sum to one across a config grid") {
  for (int n : {1, 2}) {
    for (long long s : {2LL, 4LL}) {
      for (auto gating : {GatingMode::AlwaysFire, GatingMode::Gated}) {
        for (auto kind : {OperatorKind::And, OperatorKind::Or,
                          OperatorKind::OrSub01}) {
          const auto kernel = build_kernel(analysis_config(n, s, gating),
                                           make_operator(kind));
          for (const auto& row : kernel.rows) {
            Rational sum(0);
            for (const auto& [sid, p] : row) {
              CHECK(p > Rational(0));
              sum += p;
            }
            CHECK(sum == Rational(1));
          }
        }
      }
    }
  }
  // Skewed weights keep exactness too.
  const auto spec = make_operator(
      OperatorKind::And, {{"00", Rational(1, 10)},
                          {"01", Rational(1, 5)},
                          {"10", Rational(1, 5)},
                          {"11", Rational(1, 2)}});
  const auto kernel = build_kernel(analysis_config(2, 10), spec);
  for (const auto& row : kernel.rows) {
    Rational sum(0);
    for (const auto& [sid, p] : row) sum += p;
    CHECK(sum == Rational(1));
  }
}

TEST_CASE("hand-expanded row: converged conjunction self-loops") {
  const auto kernel = build_kernel(analysis_config(1), make_operator(OperatorKind::And));
  const std::size_t converged = id_of({1, 2, 1, 2}, 1);
  REQUIRE(kernel.rows[converged].size() == 1);
  CHECK(kernel.rows[converged][0].first == converged);
  CHECK(kernel.rows[converged][0].second == Rational(1));
}

TEST_CASE("hand-expanded row: the all-exclude state") {
  // n=1, s=4, ungated, uniform inputs. The empty clause outputs 1 while
  // training, so on (1,1) y=1 the two literals with value 1 are penalized
  // with 3/4 and the zero literals are rewarded in place; each negative
  // sample penalizes its zero literals with probability 1. Expanding the
  // four samples by hand gives six successors.
  const auto kernel = build_kernel(analysis_config(1), make_operator(OperatorKind::And));
  const std::map<std::size_t, Rational> expected{
      {id_of({1, 2, 2, 1}, 1), Rational(1, 4)},   // from (0,1) y=0
      {id_of({2, 1, 1, 2}, 1), Rational(1, 4)},   // from (1,0) y=0
      {id_of({1, 2, 1, 2}, 1), Rational(25, 64)}, // (0,0) plus 9/64 from (1,1)
      {id_of({2, 2, 1, 2}, 1), Rational(3, 64)},
      {id_of({1, 2, 2, 2}, 1), Rational(3, 64)},
      {id_of({2, 2, 2, 2}, 1), Rational(1, 64)},
  };
  const auto& row = kernel.rows[id_of({2, 2, 2, 2}, 1)];
  REQUIRE(row.size() == expected.size());
  for (const auto& [sid, p] : row) {
    REQUIRE(expected.count(sid) == 1);
    CHECK(expected.at(sid) == p);
  }
}

TEST_CASE("or sub-pattern absorbing rows") {
  const auto kernel = build_kernel(analysis_config(1), make_operator(OperatorKind::OrSub01));
  const std::size_t converged = id_of({2, 1, 1, 2}, 1);  // E,I,I,E
  REQUIRE(kernel.rows[converged].size() == 1);
  CHECK(kernel.rows[converged][0].first == converged);
  CHECK(kernel.rows[converged][0].second == Rational(1));
}

TEST_CASE("closed classes agree with brute-force reachability") {
  for (auto kind : {OperatorKind::And, OperatorKind::Or, OperatorKind::OrSub10}) {
    for (auto gating : {GatingMode::AlwaysFire, GatingMode::Gated}) {
      const auto kernel =
          build_kernel(analysis_config(1, 4, gating), make_operator(kind));
      CHECK(closed_classes(kernel) == closed_classes_by_reachability(kernel));
    }
  }
}

TEST_CASE("closed classes on handcrafted chains") {
  TransitionKernel identity;
  identity.arity = 1;
  identity.states_per_action = 2;
  identity.rows = {{{0, Rational(1)}},
                   {{1, Rational(1)}},
                   {{2, Rational(1)}},
                   {{3, Rational(1)}}};
  const auto classes = closed_classes(identity);
  REQUIRE(classes.size() == 4);
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(classes[c] == std::vector<std::size_t>{c});
  }

  // Two absorbing states plus one transient split between them.
  TransitionKernel split;
  split.arity = 1;
  split.states_per_action = 2;
  split.rows = {{{0, Rational(1)}},
                {{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}},
                {{2, Rational(1)}}};
  const auto split_classes = closed_classes(split);
  REQUIRE(split_classes.size() == 2);
  CHECK(split_classes[0] == std::vector<std::size_t>{0});
  CHECK(split_classes[1] == std::vector<std::size_t>{2});

  const auto to_zero = absorption_probabilities(split, {0});
  CHECK(to_zero[0] == 1.0);
  CHECK(to_zero[2] == 0.0);
  CHECK(to_zero[1] == doctest::Approx(0.5).epsilon(1e-12));
  const auto to_two = absorption_probabilities(split, {2});
  CHECK(to_two[1] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(absorption_probabilities(split, {1}), std::invalid_argument);

  // Two isolated self-loops: absorption splits 1/0.
  TransitionKernel frozen;
  frozen.arity = 1;
  frozen.states_per_action = 1;
  frozen.rows = {{{0, Rational(1)}}, {{1, Rational(1)}}};
  const auto frozen_probs = absorption_probabilities(frozen, {0});
  CHECK(frozen_probs == std::vector<double>{1.0, 0.0});
}

TEST_CASE("ungated conjunction chain absorbs at the intended profile") {
  const auto kernel = build_kernel(analysis_config(2), make_operator(OperatorKind::And));
  const auto classes = closed_classes(kernel);
  REQUIRE(classes.size() == 1);
  REQUIRE(classes[0].size() == 1);
  CHECK(state_profile(classes[0][0], 4, 2, 1) == "IEIE");

  const auto probs = absorption_probabilities(kernel, classes[0]);
  for (double p : probs) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));

  // Independent route: powering the kernel must concentrate every row's mass
  // on the absorbing state.
  const std::size_t n = kernel.size();
  const std::size_t target = classes[0][0];
  std::vector<double> mass(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (std::size_t start : {std::size_t{0}, n / 2, n - 1}) {
    std::fill(mass.begin(), mass.end(), 0.0);
    mass[start] = 1.0;
    for (int step = 0; step < 400; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        if (mass[v] == 0.0) continue;
        for (const auto& [w, p] : kernel.rows[v]) {
          next[w] += mass[v] * p.to_double();
        }
      }
      mass.swap(next);
    }
    CHECK(mass[target] == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("one-clause chain on the full OR distribution never learns OR") {
  // No single conjunction reproduces OR; the analyzer must not report a
  // closed class whose profile does.
  const auto kernel = build_kernel(analysis_config(1), make_operator(OperatorKind::Or));
  const auto or_spec = make_operator(OperatorKind::Or);
  for (const auto& members : closed_classes(kernel)) {
    for (std::size_t member : members) {
      const auto states = decode_joint_state(member, 4, 1);
      ClauseState clause;
      for (int st : states) clause.tas.push_back({1, st});
      bool reproduces_or = true;
      for (std::size_t p = 0; p < or_spec.patterns.size(); ++p) {
        if (evaluate(clause, or_spec.patterns[p], EvalMode::Infer) !=
            or_spec.labels[p]) {
          reproduces_or = false;
          break;
        }
      }
      CHECK_FALSE(reproduces_or);
    }
  }
}

TEST_CASE("gating freezes the learned conjunction at any depth") {
  // With the vote target reached, a correct clause stops receiving feedback,
  // so every state with the profile I,E,I,E is absorbing on its own.
  const auto kernel = build_kernel(analysis_config(2, 4, GatingMode::Gated),
                                   make_operator(OperatorKind::And));
  const auto classes = closed_classes(kernel);
  std::set<std::size_t> singletons;
  for (const auto& members : classes) {
    if (members.size() == 1) singletons.insert(members[0]);
  }
  std::size_t converged_profiles = 0;
  for (std::size_t id = 0; id < kernel.size(); ++id) {
    if (state_profile(id, 4, 2, 1) == "IEIE") {
      ++converged_profiles;
      CHECK(singletons.count(id) == 1);
    }
  }
  CHECK(converged_profiles == 16);
  CHECK(classes.size() >= 16);

  // Absorption probabilities over all closed classes still partition.
  std::vector<double> total(kernel.size(), 0.0);
  for (const auto& members : classes) {
    const auto probs = absorption_probabilities(kernel, members);
    for (std::size_t v = 0; v < kernel.size(); ++v) total[v] += probs[v];
  }
  for (double t : total) CHECK(t == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kernel matches the live engine at a fixed state") {
  const MachineConfig config = analysis_config(1);
  const auto spec = make_operator(OperatorKind::And);
  const auto kernel = build_kernel(config, spec);
  const std::vector<int> start{2, 2, 2, 2};
  const std::size_t start_id = id_of(start, 1);

  RandomSource rng(808);
  const int steps = 20000;
  std::map<std::size_t, int> counts;
  for (int i = 0; i < steps; ++i) {
    TsetlinMachine machine(config, start);
    const Sample sample = draw_sample(spec, rng);
    machine.train_step(sample, rng);
    ++counts[id_of(machine.joint_states(), 1)];
  }

  double tv = 0.0;
  std::map<std::size_t, double> expected;
  for (const auto& [sid, p] : kernel.rows[start_id]) {
    expected[sid] = p.to_double();
  }
  std::set<std::size_t> support;
  for (const auto& [sid, _] : expected) support.insert(sid);
  for (const auto& [sid, _] : counts) support.insert(sid);
  for (std::size_t sid : support) {
    const double emp =
        counts.count(sid) ? static_cast<double>(counts.at(sid)) / steps : 0.0;
    const double exact = expected.count(sid) ? expected.at(sid) : 0.0;
    tv += std::abs(emp - exact);
  }
  tv /= 2;
  CHECK(tv < 0.05);
}

TEST_CASE("chain report shape and serialization") {
  const auto report = analyze_chain(analysis_config(1), make_operator(OperatorKind::And));
  CHECK(report.state_count == 16);
  REQUIRE(report.classes.size() == 1);
  CHECK(report.classes[0].action_profile == "IEIE");
  REQUIRE(report.absorption.size() == 1);
  CHECK(report.absorption[0].size() == 16);

  const auto doc = chain_report_to_json(report);
  CHECK(doc.at("format") == "tmlab-chain-report");
  CHECK(doc.at("state_count") == 16);
  CHECK(doc.at("closed_classes").size() == 1);
  CHECK(doc.at("closed_classes")[0].at("action_profile") == "IEIE");
  CHECK(doc.at("absorption")[0].size() == 16);
  for (const auto& v : doc.at("absorption")[0]) {
    CHECK(v.get<std::string>() == "1");
  }
}

// --------------------------------------------------------------------------
// Conditional single-automaton view.

namespace {

enum class ProbKind { OneOverS, FrequentOverS, One };

Rational prob_value(ProbKind kind, long long s) {
  switch (kind) {
    case ProbKind::OneOverS:
      return Rational(1, s);
    case ProbKind::FrequentOverS:
      return Rational(s - 1, s);
    case ProbKind::One:
      return Rational(1);
  }
  throw std::logic_error("bad kind");
}

struct ExpectedTransition {
  FeedbackEvent event;
  ProbKind probability;
  ActionKind toward;
};

struct Condition {
  std::array<ActionKind, 4> actions;  // TA1..TA4
  Sample sample;
  std::vector<ExpectedTransition> expected;  // empty means no action
};

constexpr FeedbackEvent R = FeedbackEvent::Reward;
constexpr FeedbackEvent P = FeedbackEvent::Penalty;

const Sample k111{{1, 1}, 1};
const Sample k100{{1, 0}, 0};
const Sample k010{{0, 1}, 0};
const Sample k000{{0, 0}, 0};

// Every frozen condition for the automaton on x2, over the conjunction
// distribution's four samples. Cases order the frozen first-bit pair as
// (E,I), (I,E), (E,E), (I,I).
const std::vector<Condition> kTa3Conditions{
    // Case 1, TA3 = I
    {{E, I, I, E}, k111, {{P, ProbKind::OneOverS, E}}},
    {{E, I, I, E}, k100, {}},
    {{E, I, I, E}, k010, {}},
    {{E, I, I, E}, k000, {}},
    {{E, I, I, I}, k111, {{P, ProbKind::OneOverS, E}}},
    {{E, I, I, I}, k100, {}},
    {{E, I, I, I}, k010, {}},
    {{E, I, I, I}, k000, {}},
    // Case 1, TA3 = E
    {{E, I, E, E}, k111, {{R, ProbKind::OneOverS, E}}},
    {{E, I, E, E}, k100, {}},
    {{E, I, E, E}, k010, {}},
    {{E, I, E, E}, k000, {{P, ProbKind::One, I}}},
    {{E, I, E, I}, k111, {{R, ProbKind::OneOverS, E}}},
    {{E, I, E, I}, k100, {}},
    {{E, I, E, I}, k010, {}},
    {{E, I, E, I}, k000, {{P, ProbKind::One, I}}},
    // Case 2, TA3 = I
    {{I, E, I, E}, k111, {{R, ProbKind::FrequentOverS, I}}},
    {{I, E, I, E}, k100, {}},
    {{I, E, I, E}, k010, {}},
    {{I, E, I, E}, k000, {}},
    {{I, E, I, I}, k111, {{P, ProbKind::OneOverS, E}}},
    {{I, E, I, I}, k100, {}},
    {{I, E, I, I}, k010, {}},
    {{I, E, I, I}, k000, {}},
    // Case 2, TA3 = E
    {{I, E, E, E}, k111, {{P, ProbKind::FrequentOverS, I}}},
    {{I, E, E, E}, k100, {{P, ProbKind::One, I}}},
    {{I, E, E, E}, k010, {}},
    {{I, E, E, E}, k000, {}},
    {{I, E, E, I}, k111, {{R, ProbKind::OneOverS, E}}},
    {{I, E, E, I}, k100, {{P, ProbKind::One, I}}},
    {{I, E, E, I}, k010, {}},
    {{I, E, E, I}, k000, {}},
    // Case 3, TA3 = I
    {{E, E, I, E}, k111, {{R, ProbKind::FrequentOverS, I}}},
    {{E, E, I, E}, k100, {}},
    {{E, E, I, E}, k010, {}},
    {{E, E, I, E}, k000, {}},
    {{E, E, I, I}, k111, {{P, ProbKind::OneOverS, E}}},
    {{E, E, I, I}, k100, {}},
    {{E, E, I, I}, k010, {}},
    {{E, E, I, I}, k000, {}},
    // Case 3, TA3 = E
    {{E, E, E, E}, k111, {{P, ProbKind::FrequentOverS, I}}},
    {{E, E, E, E}, k100, {{P, ProbKind::One, I}}},
    {{E, E, E, E}, k010, {}},
    {{E, E, E, E}, k000, {{P, ProbKind::One, I}}},
    {{E, E, E, I}, k111, {{R, ProbKind::OneOverS, E}}},
    {{E, E, E, I}, k100, {{P, ProbKind::One, I}}},
    {{E, E, E, I}, k010, {}},
    {{E, E, E, I}, k000, {{P, ProbKind::One, I}}},
    // Case 4, TA3 = I
    {{I, I, I, E}, k111, {{P, ProbKind::OneOverS, E}}},
    {{I, I, I, E}, k100, {}},
    {{I, I, I, E}, k010, {}},
    {{I, I, I, E}, k000, {}},
    {{I, I, I, I}, k111, {{P, ProbKind::OneOverS, E}}},
    {{I, I, I, I}, k100, {}},
    {{I, I, I, I}, k010, {}},
    {{I, I, I, I}, k000, {}},
    // Case 4, TA3 = E
    {{I, I, E, E}, k111, {{R, ProbKind::OneOverS, E}}},
    {{I, I, E, E}, k100, {}},
    {{I, I, E, E}, k010, {}},
    {{I, I, E, E}, k000, {}},
    {{I, I, E, I}, k111, {{R, ProbKind::OneOverS, E}}},
    {{I, I, E, I}, k100, {}},
    {{I, I, E, I}, k010, {}},
    {{I, I, E, I}, k000, {}},
};

}  // namespace

TEST_CASE("frozen-condition transitions for the x2 automaton") {
  for (long long s : {4LL, 10LL}) {
    for (const auto& condition : kTa3Conditions) {
      const auto got =
          condition_transitions(condition.actions, 3, condition.sample, Rational(s));
      REQUIRE(got.size() == condition.expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].event == condition.expected[i].event);
        CHECK(got[i].probability == prob_value(condition.expected[i].probability, s));
        CHECK(got[i].toward == condition.expected[i].toward);
      }
    }
  }
}

TEST_CASE("frozen-condition transitions for the negated-x2 automaton") {
  const Rational s(4);
  // TA4 included, zero literal on (1,1): penalized toward exclude.
  auto got = condition_transitions({E, I, E, I}, 4, k111, s);
  REQUIRE(got.size() == 1);
  CHECK(got[0].event == P);
  CHECK(got[0].probability == Rational(1, 4));
  CHECK(got[0].toward == E);

  // TA4 excluded, firing clause on (0,1) y=0: penalty 1 toward include.
  got = condition_transitions({E, I, E, E}, 4, k010, s);
  REQUIRE(got.size() == 1);
  CHECK(got[0].event == P);
  CHECK(got[0].probability == Rational(1));
  CHECK(got[0].toward == I);

  // TA4 excluded, firing clause on (1,1) y=1: rewarded deeper into exclude.
  got = condition_transitions({I, E, I, E}, 4, k111, s);
  REQUIRE(got.size() == 1);
  CHECK(got[0].event == R);
  CHECK(got[0].probability == Rational(1, 4));
  CHECK(got[0].toward == E);
}

TEST_CASE("condition transition preconditions") {
  CHECK_THROWS_AS(condition_transitions({I, E, I, E}, 5, k111, Rational(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      condition_transitions({I, E, I, E}, 3, Sample{{1, 0, 1}, 1}, Rational(4)),
      std::invalid_argument);
}

namespace {

struct SummaryCell {
  Scenario scenario;
  FrozenCase frozen_case;
  Drift ta3;
  Drift ta4;
};

constexpr Drift DI = Drift::TowardInclude;
constexpr Drift DE = Drift::TowardExclude;
constexpr Drift DM = Drift::Mixed;

void check_summary(OperatorKind kind, const std::vector<SummaryCell>& cells) {
  const auto spec = make_operator(kind);
  for (const auto& cell : cells) {
    const PairDrift drift =
        direction_summary(cell.frozen_case, cell.scenario, spec, Rational(4));
    CAPTURE(static_cast<int>(cell.scenario));
    CAPTURE(static_cast<int>(cell.frozen_case));
    CHECK(drift.ta3 == cell.ta3);
    CHECK(drift.ta4 == cell.ta4);
  }
}

using S = Scenario;
using C = FrozenCase;

}  // namespace

TEST_CASE("direction summary: conjunction distribution") {
  check_summary(OperatorKind::And,
                {
                    {S::Scenario1, C::Case1, DE, DE},
                    {S::Scenario1, C::Case2, DE, DE},
                    {S::Scenario1, C::Case3, DE, DE},
                    {S::Scenario1, C::Case4, DE, DE},
                    {S::Scenario2, C::Case1, DE, DM},
                    {S::Scenario2, C::Case2, DI, DE},
                    {S::Scenario2, C::Case3, DI, DM},
                    {S::Scenario2, C::Case4, DE, DE},
                    {S::Scenario3, C::Case1, DM, DE},
                    {S::Scenario3, C::Case2, DM, DE},
                    {S::Scenario3, C::Case3, DM, DE},
                    {S::Scenario3, C::Case4, DE, DE},
                    {S::Scenario4, C::Case1, DM, DM},
                    {S::Scenario4, C::Case2, DI, DE},
                    {S::Scenario4, C::Case3, DI, DM},
                    {S::Scenario4, C::Case4, DE, DE},
                });
}

TEST_CASE("direction summary: restricted (1,1) sub-pattern") {
  check_summary(OperatorKind::OrSub11,
                {
                    {S::Scenario1, C::Case1, DE, DE},
                    {S::Scenario1, C::Case2, DE, DE},
                    {S::Scenario1, C::Case3, DE, DE},
                    {S::Scenario1, C::Case4, DE, DE},
                    {S::Scenario2, C::Case1, DE, DE},
                    {S::Scenario2, C::Case2, DI, DE},
                    {S::Scenario2, C::Case3, DI, DE},
                    {S::Scenario2, C::Case4, DE, DE},
                    {S::Scenario3, C::Case1, DM, DE},
                    {S::Scenario3, C::Case2, DE, DE},
                    {S::Scenario3, C::Case3, DM, DE},
                    {S::Scenario3, C::Case4, DE, DE},
                    {S::Scenario4, C::Case1, DM, DE},
                    {S::Scenario4, C::Case2, DI, DE},
                    {S::Scenario4, C::Case3, DI, DE},
                    {S::Scenario4, C::Case4, DE, DE},
                });
}

TEST_CASE("direction summary: restricted (0,1) sub-pattern") {
  check_summary(OperatorKind::OrSub01,
                {
                    {S::Scenario1, C::Case1, DE, DE},
                    {S::Scenario1, C::Case2, DE, DE},
                    {S::Scenario1, C::Case3, DE, DE},
                    {S::Scenario1, C::Case4, DE, DE},
                    {S::Scenario2, C::Case1, DI, DE},
                    {S::Scenario2, C::Case2, DE, DE},
                    {S::Scenario2, C::Case3, DI, DE},
                    {S::Scenario2, C::Case4, DE, DE},
                    {S::Scenario3, C::Case1, DM, DE},
                    {S::Scenario3, C::Case2, DE, DE},
                    {S::Scenario3, C::Case3, DM, DE},
                    {S::Scenario3, C::Case4, DE, DE},
                    {S::Scenario4, C::Case1, DI, DE},
                    {S::Scenario4, C::Case2, DE, DE},
                    {S::Scenario4, C::Case3, DI, DE},
                    {S::Scenario4, C::Case4, DE, DE},
                });
}

TEST_CASE("direction summary: restricted (1,0) sub-pattern") {
  // Mirror of the (0,1) analysis with the input bits swapped: what the
  // first-bit pair does there, the second-bit pair does here.
  check_summary(OperatorKind::OrSub10,
                {
                    {S::Scenario1, C::Case1, DE, DE},
                    {S::Scenario1, C::Case2, DE, DE},
                    {S::Scenario1, C::Case3, DE, DE},
                    {S::Scenario1, C::Case4, DE, DE},
                    {S::Scenario2, C::Case1, DE, DE},
                    {S::Scenario2, C::Case2, DE, DE},
                    {S::Scenario2, C::Case3, DE, DE},
                    {S::Scenario2, C::Case4, DE, DE},
                    {S::Scenario3, C::Case1, DM, DE},
                    {S::Scenario3, C::Case2, DE, DI},
                    {S::Scenario3, C::Case3, DM, DI},
                    {S::Scenario3, C::Case4, DE, DE},
                    {S::Scenario4, C::Case1, DM, DE},
                    {S::Scenario4, C::Case2, DE, DI},
                    {S::Scenario4, C::Case3, DM, DI},
                    {S::Scenario4, C::Case4, DE, DE},
                });
}

TEST_CASE("diagram rendering") {
  const std::string dot = condition_diagram_dot({E, I, I, E}, 3, k111, Rational(4), 2);
  CHECK(dot.find("digraph condition {") != std::string::npos);
  CHECK(dot.find("P 1/4") != std::string::npos);
  CHECK(dot.find("style=solid") != std::string::npos);
  CHECK(dot.find("no action") == std::string::npos);
  // One penalty edge per include-side state at n=2.
  CHECK(dot.find("s1 -> s2") != std::string::npos);
  CHECK(dot.find("s2 -> s3") != std::string::npos);

  const std::string quiet = condition_diagram_dot({E, I, I, E}, 3, k100, Rational(4), 2);
  CHECK(quiet.find("// no action") != std::string::npos);
  CHECK(quiet.find("->") == std::string::npos);

  const std::string reward = condition_diagram_dot({I, E, E, E}, 4, k111, Rational(4), 2);
  CHECK(reward.find("R 1/4") != std::string::npos);
  CHECK(reward.find("style=dashed") != std::string::npos);
  CHECK(reward.find("s4 -> s4") != std::string::npos);  // end self-loop

  // Deterministic output.
  CHECK(condition_diagram_dot({E, I, I, E}, 3, k111, Rational(4), 2) == dot);
}

TEST_SUITE_END();
