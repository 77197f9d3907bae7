#include "tmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "tmlab/errors.hpp"

namespace tmlab {

void ExperimentConfig::validate() const {
  machine.validate();
  if (op.input_width() != machine.input_width) {
    throw ConfigError("o", "machine width must match the operator width");
  }
  if (trials < 1) throw ConfigError("experiment.trials", "must be >= 1");
  if (max_steps < 1) throw ConfigError("experiment.max_steps", "must be >= 1");
  switch (convergence.kind) {
    case ConvergenceCriterion::Kind::TargetProfile: {
      const std::size_t expected =
          static_cast<std::size_t>(machine.clause_count) *
          static_cast<std::size_t>(2 * machine.input_width);
      if (convergence.profile.size() != expected) {
        throw ConfigError("experiment.convergence.profile",
                          "must list one action per automaton (m*2o)");
      }
      break;
    }
    case ConvergenceCriterion::Kind::ActionStability:
      if (convergence.window < 1) {
        throw ConfigError("experiment.convergence.window", "must be >= 1");
      }
      break;
    case ConvergenceCriterion::Kind::TruthTable:
      break;
  }
}

bool target_profile_reached(const TsetlinMachine& machine,
                            const std::vector<ActionKind>& profile) {
  const int n = machine.config().states_per_action;
  std::size_t i = 0;
  for (const auto& clause : machine.clauses()) {
    for (const auto& ta : clause.tas) {
      const int deepest = profile[i] == ActionKind::Include ? 1 : 2 * n;
      if (ta.state != deepest) return false;
      ++i;
    }
  }
  return true;
}

bool truth_table_reached(const TsetlinMachine& machine,
                         const OperatorSpec& op) {
  const int target = machine.config().target;
  for (std::size_t p = 0; p < op.patterns.size(); ++p) {
    const InputVector& x = op.patterns[p];
    if (machine.classify(x) != op.labels[p]) return false;
    const int firing = machine.vote_sum(x, EvalMode::Infer);
    if (op.labels[p] == 1) {
      if (firing < target) return false;
    } else {
      if (firing != 0) return false;
    }
  }
  return true;
}

TrialResult run_trial(const ExperimentConfig& config, int trial_index) {
  const std::uint64_t seed =
      config.base_seed + static_cast<std::uint64_t>(trial_index);
  RandomSource rng(seed);
  TsetlinMachine machine(config.machine, rng);

  TrialResult result;
  result.seed = seed;

  std::vector<ActionKind> profile = machine.action_profile();
  int stable_streak = 0;
  bool truth_holds = false;

  for (long step = 1; step <= config.max_steps; ++step) {
    const Sample sample = draw_sample(config.op, rng);
    const StepTrace trace = machine.train_step(sample, rng);

    bool met = false;
    switch (config.convergence.kind) {
      case ConvergenceCriterion::Kind::TargetProfile:
        met = target_profile_reached(machine, config.convergence.profile);
        break;
      case ConvergenceCriterion::Kind::TruthTable:
        // The predicate only depends on actions; re-evaluate on flips.
        if (trace.any_action_changed || step == 1) {
          truth_holds = truth_table_reached(machine, config.op);
        }
        met = truth_holds;
        break;
      case ConvergenceCriterion::Kind::ActionStability: {
        auto now = machine.action_profile();
        if (now == profile) {
          ++stable_streak;
        } else {
          stable_streak = 0;
          profile = std::move(now);
        }
        met = stable_streak >= config.convergence.window;
        break;
      }
    }
    if (met) {
      result.converged = true;
      result.steps = step;
      result.profile = machine.profile_string();
      return result;
    }
  }
  result.converged = false;
  result.steps = config.max_steps;
  result.profile = machine.profile_string();
  return result;
}

namespace {

long nearest_rank(std::vector<long> values, double quantile) {
  std::sort(values.begin(), values.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::max(1.0, std::ceil(quantile * static_cast<double>(values.size()))));
  return values[rank - 1];
}

}  // namespace

ExperimentReport run_batch(const ExperimentConfig& config) {
  config.validate();

  ExperimentReport report;
  report.trials.resize(static_cast<std::size_t>(config.trials));

  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.trials));

  if (threads <= 1) {
    for (int i = 0; i < config.trials; ++i) {
      report.trials[static_cast<std::size_t>(i)] = run_trial(config, i);
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= config.trials) return;
        report.trials[static_cast<std::size_t>(i)] = run_trial(config, i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<long> steps;
  steps.reserve(report.trials.size());
  for (const auto& trial : report.trials) {
    if (trial.converged) ++report.converged_count;
    steps.push_back(trial.steps);
  }
  report.convergence_fraction = static_cast<double>(report.converged_count) /
                                static_cast<double>(config.trials);
  report.p50_steps = nearest_rank(steps, 0.50);
  report.p90_steps = nearest_rank(steps, 0.90);
  report.max_steps = *std::max_element(steps.begin(), steps.end());

  if (config.op.kind == OperatorKind::Or &&
      3 * config.machine.target > config.machine.clause_count) {
    std::ostringstream warn;
    warn << "t=" << config.machine.target << " exceeds m/3 with m="
         << config.machine.clause_count
         << "; multi-clause OR convergence is only guaranteed for t <= m/3";
    report.warnings.push_back(warn.str());
  }
  return report;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc;
  doc["format"] = "tmlab-experiment-report";
  doc["version"] = 1;
  nlohmann::ordered_json trials = nlohmann::ordered_json::array();
  for (const auto& trial : report.trials) {
    trials.push_back({{"seed", trial.seed},
                      {"converged", trial.converged},
                      {"steps", trial.steps},
                      {"profile", trial.profile}});
  }
  doc["trials"] = std::move(trials);
  doc["aggregate"] = {{"converged", report.converged_count},
                      {"total", report.trials.size()},
                      {"convergence_fraction", report.convergence_fraction},
                      {"p50_steps", report.p50_steps},
                      {"p90_steps", report.p90_steps},
                      {"max_steps", report.max_steps}};
  doc["warnings"] = report.warnings;
  return doc;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream csv;
  csv << "seed,converged,steps,profile\n";
  for (const auto& trial : report.trials) {
    csv << trial.seed << ',' << (trial.converged ? 1 : 0) << ',' << trial.steps
        << ',' << trial.profile << '\n';
  }
  return csv.str();
}

}  // namespace tmlab
