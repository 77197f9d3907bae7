#include "tmlab/machine.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmlab {

void MachineConfig::validate() const {
  if (input_width < 1) throw ConfigError("o", "input width must be >= 1");
  if (clause_count < 1) throw ConfigError("m", "clause count must be >= 1");
  if (states_per_action < 1) {
    throw ConfigError("n", "states per action must be >= 1");
  }
  if (specificity <= Rational(1)) throw ConfigError("s", "must be > 1");
  if (target < 1) throw ConfigError("t", "must be >= 1");
  if (target > clause_count) {
    throw ConfigError("t", "must not exceed the clause count m");
  }
}

Rational feedback_probability(Bit y, int vote_sum, int target) {
  if (target < 1) throw std::invalid_argument("target must be >= 1");
  const int clamped = std::clamp(vote_sum, -target, target);
  if (y == 1) return Rational(target - clamped, 2LL * target);
  return Rational(target + clamped, 2LL * target);
}

namespace {

std::vector<ClauseState> fresh_clauses(const MachineConfig& config) {
  std::vector<ClauseState> clauses(
      static_cast<std::size_t>(config.clause_count));
  for (auto& clause : clauses) {
    clause.tas.assign(static_cast<std::size_t>(2 * config.input_width),
                      AutomatonState{config.states_per_action, 1});
  }
  return clauses;
}

}  // namespace

TsetlinMachine::TsetlinMachine(MachineConfig config, RandomSource& rng)
    : config_(std::move(config)) {
  config_.validate();
  clauses_ = fresh_clauses(config_);
  const int n = config_.states_per_action;
  for (auto& clause : clauses_) {
    for (auto& ta : clause.tas) {
      ta.state = rng.next_bool(0.5) ? n : n + 1;
    }
  }
}

TsetlinMachine::TsetlinMachine(MachineConfig config,
                               const std::vector<int>& states)
    : config_(std::move(config)) {
  config_.validate();
  clauses_ = fresh_clauses(config_);
  set_joint_states(states);
}

std::vector<int> TsetlinMachine::joint_states() const {
  std::vector<int> states;
  states.reserve(clauses_.size() * clauses_.front().tas.size());
  for (const auto& clause : clauses_) {
    for (const auto& ta : clause.tas) states.push_back(ta.state);
  }
  return states;
}

void TsetlinMachine::set_joint_states(const std::vector<int>& states) {
  const std::size_t expected =
      static_cast<std::size_t>(config_.clause_count) *
      static_cast<std::size_t>(2 * config_.input_width);
  if (states.size() != expected) {
    throw std::invalid_argument("joint state arity mismatch");
  }
  std::size_t i = 0;
  for (auto& clause : clauses_) {
    for (auto& ta : clause.tas) {
      ta = make_automaton(config_.states_per_action, states[i++]);
    }
  }
}

int TsetlinMachine::vote_sum(const InputVector& x, EvalMode mode) const {
  int sum = 0;
  for (const auto& clause : clauses_) sum += evaluate(clause, x, mode);
  return sum;
}

Bit TsetlinMachine::classify(const InputVector& x) const {
  return vote_sum(x, EvalMode::Infer) >= config_.threshold ? 1 : 0;
}

StepTrace TsetlinMachine::train_step(const Sample& sample, RandomSource& rng) {
  if (static_cast<int>(sample.x.size()) != config_.input_width) {
    throw std::invalid_argument("sample width does not match machine width");
  }

  StepTrace trace;
  trace.clause_values.reserve(clauses_.size());
  for (const auto& clause : clauses_) {
    trace.clause_values.push_back(evaluate(clause, sample.x, EvalMode::Train));
  }
  trace.vote_sum = 0;
  for (Bit v : trace.clause_values) trace.vote_sum += v;

  trace.gate_probability =
      config_.gating == GatingMode::AlwaysFire
          ? Rational(1)
          : feedback_probability(sample.y, trace.vote_sum, config_.target);

  const double gate_p = trace.gate_probability.to_double();
  trace.gate_fired.reserve(clauses_.size());
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    trace.gate_fired.push_back(rng.next_bool(gate_p) ? 1 : 0);
  }

  trace.events.resize(clauses_.size());
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    if (!trace.gate_fired[j]) continue;
    auto& clause = clauses_[j];
    const Bit clause_value = trace.clause_values[j];
    trace.events[j].reserve(clause.tas.size());
    for (std::size_t t = 0; t < clause.tas.size(); ++t) {
      auto& ta = clause.tas[t];
      const ActionKind act = action(ta);
      const Bit literal = literal_value(sample.x, static_cast<int>(t) + 1);
      const FeedbackContext ctx(act, clause_value != 0, literal != 0);
      const FeedbackProbs probs = sample.y == 1
                                      ? type_i_probs(ctx, config_.specificity)
                                      : type_ii_probs(ctx);
      const FeedbackEvent event = sample_event(probs, rng);
      trace.events[j].push_back(event);
      if (event == FeedbackEvent::Reward) {
        ta = apply_reward(ta);
      } else if (event == FeedbackEvent::Penalty) {
        ta = apply_penalty(ta);
      }
      if (action(ta) != act) trace.any_action_changed = true;
    }
  }
  return trace;
}

std::vector<ActionKind> TsetlinMachine::action_profile() const {
  std::vector<ActionKind> profile;
  profile.reserve(clauses_.size() * clauses_.front().tas.size());
  for (const auto& clause : clauses_) {
    for (const auto& ta : clause.tas) profile.push_back(action(ta));
  }
  return profile;
}

std::string profile_to_string(const std::vector<ActionKind>& profile,
                              int clause_count) {
  const std::size_t per_clause = profile.size() / clause_count;
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0 && i % per_clause == 0) out += '|';
    out += action_letter(profile[i]);
  }
  return out;
}

std::string TsetlinMachine::profile_string() const {
  return profile_to_string(action_profile(), config_.clause_count);
}

std::vector<ActionKind> parse_profile(const std::string& text) {
  std::vector<ActionKind> profile;
  for (char c : text) {
    if (c == '|') continue;
    if (c == 'I') {
      profile.push_back(ActionKind::Include);
    } else if (c == 'E') {
      profile.push_back(ActionKind::Exclude);
    } else {
      throw std::invalid_argument(
          "profile strings may only contain 'I', 'E' and '|'");
    }
  }
  return profile;
}

nlohmann::ordered_json TsetlinMachine::to_json() const {
  nlohmann::ordered_json doc;
  doc["format"] = "tmlab-machine";
  doc["version"] = 1;
  doc["config"] = {
      {"o", config_.input_width},
      {"m", config_.clause_count},
      {"n", config_.states_per_action},
      {"s", config_.specificity.to_string()},
      {"t", config_.target},
      {"th", config_.threshold},
      {"gating",
       config_.gating == GatingMode::Gated ? "gated" : "always_fire"},
  };
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (const auto& clause : clauses_) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& ta : clause.tas) row.push_back(ta.state);
    states.push_back(std::move(row));
  }
  doc["clauses"] = std::move(states);
  return doc;
}

TsetlinMachine TsetlinMachine::from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "tmlab-machine" || doc.value("version", 0) != 1) {
    throw std::invalid_argument("not a version-1 machine snapshot");
  }
  const auto& cfg = doc.at("config");
  MachineConfig config;
  config.input_width = cfg.at("o").get<int>();
  config.clause_count = cfg.at("m").get<int>();
  config.states_per_action = cfg.at("n").get<int>();
  config.specificity = Rational::parse(cfg.at("s").get<std::string>());
  config.target = cfg.at("t").get<int>();
  config.threshold = cfg.at("th").get<int>();
  const std::string gating = cfg.at("gating").get<std::string>();
  if (gating == "gated") {
    config.gating = GatingMode::Gated;
  } else if (gating == "always_fire") {
    config.gating = GatingMode::AlwaysFire;
  } else {
    throw std::invalid_argument("unknown gating mode '" + gating + "'");
  }

  std::vector<int> states;
  for (const auto& row : doc.at("clauses")) {
    for (const auto& s : row) states.push_back(s.get<int>());
  }
  return TsetlinMachine(config, states);
}

}  // namespace tmlab
