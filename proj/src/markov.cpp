#include "tmlab/markov.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace tmlab {

std::size_t encode_joint_state(const std::vector<int>& states,
                               int states_per_action) {
  const std::size_t base = static_cast<std::size_t>(2 * states_per_action);
  std::size_t id = 0;
  std::size_t mult = 1;
  for (int st : states) {
    id += static_cast<std::size_t>(st - 1) * mult;
    mult *= base;
  }
  return id;
}

std::vector<int> decode_joint_state(std::size_t id, int arity,
                                    int states_per_action) {
  const std::size_t base = static_cast<std::size_t>(2 * states_per_action);
  std::vector<int> states(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) {
    states[static_cast<std::size_t>(i)] = static_cast<int>(id % base) + 1;
    id /= base;
  }
  return states;
}

std::size_t joint_state_count(const MachineConfig& config,
                              std::size_t state_cap) {
  const int arity = config.clause_count * 2 * config.input_width;
  const std::size_t base =
      static_cast<std::size_t>(2 * config.states_per_action);
  std::size_t count = 1;
  for (int i = 0; i < arity; ++i) {
    if (count > state_cap / base) {
      std::ostringstream msg;
      msg << "joint state space (2n)^(m*2o) exceeds the cap " << state_cap
          << " (n=" << config.states_per_action
          << ", m=" << config.clause_count << ", o=" << config.input_width
          << ")";
      throw AnalysisTooLargeError(msg.str());
    }
    count *= base;
  }
  return count;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Successor distribution of a single clause's local state, conditioned on the
// sample. local ids use base 2N with the clause's first automaton as the
// least significant digit.
SparseRow clause_successor_dist(const std::vector<int>& local_states,
                                Bit clause_value, const Sample& sample,
                                const MachineConfig& config,
                                const Rational& gate) {
  const std::size_t base =
      static_cast<std::size_t>(2 * config.states_per_action);
  std::map<std::size_t, Rational> dist;

  std::size_t current = 0;
  {
    std::size_t mult = 1;
    for (int st : local_states) {
      current += static_cast<std::size_t>(st - 1) * mult;
      mult *= base;
    }
  }
  if (gate < Rational(1)) dist[current] += Rational(1) - gate;
  if (gate > Rational(0)) {
    SparseRow acc{{0, gate}};
    std::size_t mult = 1;
    for (std::size_t t = 0; t < local_states.size(); ++t) {
      const AutomatonState ta{config.states_per_action, local_states[t]};
      const Bit literal = literal_value(sample.x, static_cast<int>(t) + 1);
      const FeedbackContext ctx(action(ta), clause_value != 0, literal != 0);
      const FeedbackProbs probs = sample.y == 1
                                      ? type_i_probs(ctx, config.specificity)
                                      : type_ii_probs(ctx);
      // Reward at a chain end lands on the same state as inaction; merge.
      std::map<int, Rational> moves;
      if (!probs.reward.is_zero()) moves[apply_reward(ta).state] += probs.reward;
      if (!probs.inaction.is_zero()) moves[ta.state] += probs.inaction;
      if (!probs.penalty.is_zero()) {
        moves[apply_penalty(ta).state] += probs.penalty;
      }
      SparseRow next;
      next.reserve(acc.size() * moves.size());
      for (const auto& [prefix, p] : acc) {
        for (const auto& [state, q] : moves) {
          next.emplace_back(prefix + static_cast<std::size_t>(state - 1) * mult,
                            p * q);
        }
      }
      acc = std::move(next);
      mult *= base;
    }
    for (const auto& [local, p] : acc) dist[local] += p;
  }
  return SparseRow(dist.begin(), dist.end());
}

}  // namespace

TransitionKernel build_kernel(const MachineConfig& config,
                              const OperatorSpec& spec,
                              std::size_t state_cap) {
  config.validate();
  if (spec.input_width() != config.input_width) {
    throw std::invalid_argument(
        "operator input width does not match machine width");
  }
  const std::size_t size = joint_state_count(config, state_cap);
  const int per_clause = 2 * config.input_width;
  const int arity = config.clause_count * per_clause;
  const std::size_t base =
      static_cast<std::size_t>(2 * config.states_per_action);

  std::size_t clause_mult = 1;
  for (int t = 0; t < per_clause; ++t) clause_mult *= base;

  TransitionKernel kernel;
  kernel.arity = arity;
  kernel.states_per_action = config.states_per_action;
  kernel.rows.resize(size);

  for (std::size_t id = 0; id < size; ++id) {
    const std::vector<int> states =
        decode_joint_state(id, arity, config.states_per_action);
    std::map<std::size_t, Rational> row;

    for (std::size_t p = 0; p < spec.patterns.size(); ++p) {
      const Sample sample{spec.patterns[p], spec.labels[p]};

      std::vector<std::vector<int>> locals(
          static_cast<std::size_t>(config.clause_count));
      std::vector<Bit> clause_values(
          static_cast<std::size_t>(config.clause_count));
      int vote = 0;
      for (int j = 0; j < config.clause_count; ++j) {
        auto& local = locals[static_cast<std::size_t>(j)];
        local.assign(states.begin() + j * per_clause,
                     states.begin() + (j + 1) * per_clause);
        ClauseState clause;
        clause.tas.reserve(local.size());
        for (int st : local) {
          clause.tas.push_back(AutomatonState{config.states_per_action, st});
        }
        const Bit value = evaluate(clause, sample.x, EvalMode::Train);
        clause_values[static_cast<std::size_t>(j)] = value;
        vote += value;
      }

      const Rational gate =
          config.gating == GatingMode::AlwaysFire
              ? Rational(1)
              : feedback_probability(sample.y, vote, config.target);

      SparseRow acc{{0, spec.weights[p]}};
      std::size_t mult = 1;
      for (int j = 0; j < config.clause_count; ++j) {
        const SparseRow clause_dist = clause_successor_dist(
            locals[static_cast<std::size_t>(j)],
            clause_values[static_cast<std::size_t>(j)], sample, config, gate);
        SparseRow next;
        next.reserve(acc.size() * clause_dist.size());
        for (const auto& [prefix, pa] : acc) {
          for (const auto& [local, pl] : clause_dist) {
            next.emplace_back(prefix + local * mult, pa * pl);
          }
        }
        acc = std::move(next);
        mult *= clause_mult;
      }
      for (const auto& [sid, pr] : acc) row[sid] += pr;
    }

    Rational sum(0);
    for (const auto& [sid, pr] : row) sum += pr;
    if (!sum.is_one()) {
      throw std::logic_error("kernel row " + std::to_string(id) +
                             " sums to " + sum.to_string());
    }
    kernel.rows[id].assign(row.begin(), row.end());
  }
  return kernel;
}

std::vector<std::vector<std::size_t>> closed_classes(
    const TransitionKernel& kernel) {
  const std::size_t n = kernel.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> index(n, kUnset);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<std::size_t> component(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    call.push_back({root, 0});

    while (!call.empty()) {
      Frame& frame = call.back();
      const auto& edges = kernel.rows[frame.vertex];
      if (frame.edge < edges.size()) {
        const std::size_t w = edges[frame.edge].first;
        ++frame.edge;
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[frame.vertex] = std::min(lowlink[frame.vertex], index[w]);
        }
        continue;
      }
      const std::size_t v = frame.vertex;
      call.pop_back();
      if (!call.empty()) {
        lowlink[call.back().vertex] =
            std::min(lowlink[call.back().vertex], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> scc;
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components.size();
          scc.push_back(w);
          if (w == v) break;
        }
        components.push_back(std::move(scc));
      }
    }
  }

  std::vector<std::vector<std::size_t>> closed;
  for (const auto& scc : components) {
    bool is_closed = true;
    for (std::size_t v : scc) {
      for (const auto& [w, p] : kernel.rows[v]) {
        if (component[w] != component[v]) {
          is_closed = false;
          break;
        }
      }
      if (!is_closed) break;
    }
    if (is_closed) {
      auto members = scc;
      std::sort(members.begin(), members.end());
      closed.push_back(std::move(members));
    }
  }
  std::sort(closed.begin(), closed.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return closed;
}

std::vector<double> absorption_probabilities(
    const TransitionKernel& kernel, const std::vector<std::size_t>& target) {
  const auto classes = closed_classes(kernel);
  std::vector<std::size_t> wanted = target;
  std::sort(wanted.begin(), wanted.end());
  const bool is_class =
      std::any_of(classes.begin(), classes.end(),
                  [&](const auto& c) { return c == wanted; });
  if (!is_class) {
    throw std::invalid_argument("target is not a closed class of the kernel");
  }

  const std::size_t n = kernel.size();
  // 0 = transient, 1 = target, 2 = other closed class
  std::vector<std::uint8_t> status(n, 0);
  for (const auto& c : classes) {
    const std::uint8_t mark = (c == wanted) ? 1 : 2;
    for (std::size_t v : c) status[v] = mark;
  }

  std::vector<std::ptrdiff_t> transient_index(n, -1);
  std::size_t transient_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (status[v] == 0) {
      transient_index[v] = static_cast<std::ptrdiff_t>(transient_count++);
    }
  }

  std::vector<double> result(n, 0.0);
  for (std::size_t v : wanted) result[v] = 1.0;
  if (transient_count == 0) return result;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> triplets;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(transient_count));
  for (std::size_t v = 0; v < n; ++v) {
    if (status[v] != 0) continue;
    const auto i = static_cast<Eigen::Index>(transient_index[v]);
    triplets.emplace_back(i, i, 1.0);
    for (const auto& [w, p] : kernel.rows[v]) {
      const double pw = p.to_double();
      if (status[w] == 1) {
        b(i) += pw;
      } else if (status[w] == 0) {
        const auto jj = static_cast<Eigen::Index>(transient_index[w]);
        triplets.emplace_back(i, jj, -pw);
      }
    }
  }

  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(transient_count),
                                static_cast<Eigen::Index>(transient_count));
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.analyzePattern(A);
  solver.factorize(A);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("absorption solve: factorization failed");
  }
  const Eigen::VectorXd h = solver.solve(b);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("absorption solve failed");
  }
  const double residual = (A * h - b).cwiseAbs().maxCoeff();
  if (!(residual < 1e-10)) {
    throw std::runtime_error("absorption solve residual " +
                             std::to_string(residual) + " exceeds 1e-10");
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (status[v] == 0) {
      const double value = h(static_cast<Eigen::Index>(transient_index[v]));
      result[v] = std::clamp(value, 0.0, 1.0);
    }
  }
  return result;
}

std::string state_profile(std::size_t id, int arity, int states_per_action,
                          int clause_count) {
  const std::vector<int> states = decode_joint_state(id, arity, states_per_action);
  std::vector<ActionKind> profile;
  profile.reserve(states.size());
  for (int st : states) {
    profile.push_back(st <= states_per_action ? ActionKind::Include
                                              : ActionKind::Exclude);
  }
  return profile_to_string(profile, clause_count);
}

ChainReport analyze_chain(const MachineConfig& config, const OperatorSpec& spec,
                          std::size_t state_cap) {
  const TransitionKernel kernel = build_kernel(config, spec, state_cap);
  ChainReport report;
  report.state_count = kernel.size();
  report.arity = kernel.arity;
  report.states_per_action = kernel.states_per_action;
  report.clause_count = config.clause_count;

  for (const auto& members : closed_classes(kernel)) {
    ClosedClassInfo info;
    info.states = members;
    info.action_profile = state_profile(members.front(), kernel.arity,
                                        kernel.states_per_action,
                                        config.clause_count);
    for (std::size_t v : members) {
      if (state_profile(v, kernel.arity, kernel.states_per_action,
                        config.clause_count) != info.action_profile) {
        info.action_profile = "(varies)";
        break;
      }
    }
    report.classes.push_back(std::move(info));
  }
  for (const auto& info : report.classes) {
    report.absorption.push_back(absorption_probabilities(kernel, info.states));
  }
  return report;
}

namespace {

std::string format_probability(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

}  // namespace

nlohmann::ordered_json chain_report_to_json(const ChainReport& report) {
  nlohmann::ordered_json doc;
  doc["format"] = "tmlab-chain-report";
  doc["version"] = 1;
  doc["state_count"] = report.state_count;
  doc["arity"] = report.arity;
  doc["states_per_action"] = report.states_per_action;
  doc["clause_count"] = report.clause_count;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& info : report.classes) {
    classes.push_back({{"states", info.states},
                       {"action_profile", info.action_profile}});
  }
  doc["closed_classes"] = std::move(classes);
  nlohmann::ordered_json absorption = nlohmann::ordered_json::array();
  for (const auto& vec : report.absorption) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double v : vec) row.push_back(format_probability(v));
    absorption.push_back(std::move(row));
  }
  doc["absorption"] = std::move(absorption);
  return doc;
}

// ---------------------------------------------------------------------------

std::vector<ConditionTransition> condition_transitions(
    const std::array<ActionKind, 4>& actions, int target_ta,
    const Sample& sample, const Rational& s) {
  if (sample.x.size() != 2) {
    throw std::invalid_argument(
        "conditional analysis applies to two-input machines");
  }
  if (target_ta < 1 || target_ta > 4) {
    throw std::invalid_argument("target automaton index must be in [1, 4]");
  }

  bool any_included = false;
  Bit clause = 1;
  for (int t = 1; t <= 4; ++t) {
    if (actions[static_cast<std::size_t>(t - 1)] != ActionKind::Include) {
      continue;
    }
    any_included = true;
    if (literal_value(sample.x, t) == 0) clause = 0;
  }
  if (!any_included) clause = 1;  // empty clause during training

  const Bit literal = literal_value(sample.x, target_ta);
  const ActionKind current = actions[static_cast<std::size_t>(target_ta - 1)];
  const FeedbackContext ctx(current, clause != 0, literal != 0);
  const FeedbackProbs probs =
      sample.y == 1 ? type_i_probs(ctx, s) : type_ii_probs(ctx);

  std::vector<ConditionTransition> out;
  if (!probs.reward.is_zero()) {
    out.push_back({FeedbackEvent::Reward, probs.reward, current});
  }
  if (!probs.penalty.is_zero()) {
    const ActionKind opposite = current == ActionKind::Include
                                    ? ActionKind::Exclude
                                    : ActionKind::Include;
    out.push_back({FeedbackEvent::Penalty, probs.penalty, opposite});
  }
  return out;
}

std::array<ActionKind, 2> frozen_case_actions(FrozenCase c) {
  switch (c) {
    case FrozenCase::Case1:
      return {ActionKind::Exclude, ActionKind::Include};
    case FrozenCase::Case2:
      return {ActionKind::Include, ActionKind::Exclude};
    case FrozenCase::Case3:
      return {ActionKind::Exclude, ActionKind::Exclude};
    case FrozenCase::Case4:
      return {ActionKind::Include, ActionKind::Include};
  }
  throw std::invalid_argument("invalid frozen case");
}

std::array<ActionKind, 2> scenario_actions(Scenario sc) {
  switch (sc) {
    case Scenario::Scenario1:
      return {ActionKind::Include, ActionKind::Include};
    case Scenario::Scenario2:
      return {ActionKind::Include, ActionKind::Exclude};
    case Scenario::Scenario3:
      return {ActionKind::Exclude, ActionKind::Include};
    case Scenario::Scenario4:
      return {ActionKind::Exclude, ActionKind::Exclude};
  }
  throw std::invalid_argument("invalid scenario");
}

std::string drift_name(Drift d) {
  switch (d) {
    case Drift::TowardInclude:
      return "toward-I";
    case Drift::TowardExclude:
      return "toward-E";
    case Drift::Mixed:
      return "mixed";
  }
  throw std::invalid_argument("invalid drift");
}

namespace {

Drift classify_drift(bool toward_include, bool toward_exclude) {
  if (toward_include && toward_exclude) return Drift::Mixed;
  if (toward_include) return Drift::TowardInclude;
  if (toward_exclude) return Drift::TowardExclude;
  throw std::logic_error(
      "no non-inaction transition for the studied automaton under this "
      "distribution");
}

}  // namespace

PairDrift direction_summary(FrozenCase frozen_case, Scenario scenario,
                            const OperatorSpec& spec, const Rational& s) {
  if (spec.input_width() != 2) {
    throw std::invalid_argument(
        "direction summaries apply to two-input distributions");
  }
  const auto first = frozen_case_actions(frozen_case);
  const auto second = scenario_actions(scenario);
  const std::array<ActionKind, 4> actions{first[0], first[1], second[0],
                                          second[1]};

  bool include[2] = {false, false};
  bool exclude[2] = {false, false};
  for (std::size_t p = 0; p < spec.patterns.size(); ++p) {
    const Sample sample{spec.patterns[p], spec.labels[p]};
    for (int target = 3; target <= 4; ++target) {
      for (const auto& tr : condition_transitions(actions, target, sample, s)) {
        if (tr.toward == ActionKind::Include) {
          include[target - 3] = true;
        } else {
          exclude[target - 3] = true;
        }
      }
    }
  }
  return PairDrift{classify_drift(include[0], exclude[0]),
                   classify_drift(include[1], exclude[1])};
}

std::string condition_diagram_dot(const std::array<ActionKind, 4>& actions,
                                  int target_ta, const Sample& sample,
                                  const Rational& s, int states_per_action) {
  const auto transitions = condition_transitions(actions, target_ta, sample, s);
  const int n = states_per_action;
  if (n < 1) throw std::invalid_argument("states per action must be >= 1");

  // Recompute the context pieces for the caption.
  bool any_included = false;
  Bit clause = 1;
  for (int t = 1; t <= 4; ++t) {
    if (actions[static_cast<std::size_t>(t - 1)] != ActionKind::Include) {
      continue;
    }
    any_included = true;
    if (literal_value(sample.x, t) == 0) clause = 0;
  }
  if (!any_included) clause = 1;
  const Bit literal = literal_value(sample.x, target_ta);

  std::ostringstream dot;
  dot << "digraph condition {\n";
  dot << "  rankdir=LR;\n";
  dot << "  labelloc=\"t\";\n";
  dot << "  label=\"";
  for (int t = 1; t <= 4; ++t) {
    if (t > 1) dot << ' ';
    dot << "TA" << t << '='
        << action_letter(actions[static_cast<std::size_t>(t - 1)]);
    if (t == target_ta) dot << '*';
  }
  dot << " | x1=" << static_cast<int>(sample.x[0])
      << " x2=" << static_cast<int>(sample.x[1])
      << " y=" << static_cast<int>(sample.y);
  dot << " | type " << (sample.y == 1 ? "I" : "II");
  dot << " | literal=" << static_cast<int>(literal)
      << " clause=" << static_cast<int>(clause) << "\";\n";
  dot << "  node [shape=circle];\n";
  dot << "  subgraph cluster_include {\n    label=\"Include\";\n";
  for (int st = 1; st <= n; ++st) dot << "    s" << st << " [label=\"" << st << "\"];\n";
  dot << "  }\n";
  dot << "  subgraph cluster_exclude {\n    label=\"Exclude\";\n";
  for (int st = n + 1; st <= 2 * n; ++st) {
    dot << "    s" << st << " [label=\"" << st << "\"];\n";
  }
  dot << "  }\n";

  if (transitions.empty()) {
    dot << "  // no action\n";
  }
  const ActionKind current = actions[static_cast<std::size_t>(target_ta - 1)];
  const int side_begin = current == ActionKind::Include ? 1 : n + 1;
  const int side_end = current == ActionKind::Include ? n : 2 * n;
  for (const auto& tr : transitions) {
    const bool is_reward = tr.event == FeedbackEvent::Reward;
    for (int st = side_begin; st <= side_end; ++st) {
      const AutomatonState from{n, st};
      const AutomatonState to =
          is_reward ? apply_reward(from) : apply_penalty(from);
      dot << "  s" << from.state << " -> s" << to.state << " [style="
          << (is_reward ? "dashed" : "solid") << ", label=\""
          << (is_reward ? 'R' : 'P') << ' ' << tr.probability.to_string()
          << "\"];\n";
    }
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace tmlab
