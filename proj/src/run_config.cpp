#include "tmlab/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tmlab/errors.hpp"

namespace tmlab {

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                         const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (known.count(key) == 0) {
      throw ConfigError(where.empty() ? key : where + "." + key,
                        "unknown key");
    }
  }
}

// Exact conversion; floats are accepted only when they are a dyadic rational
// with a small denominator, otherwise the "p/q" string form is required.
Rational rational_field(const nlohmann::json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rational(value.get<long long>());
  }
  if (value.is_number_unsigned()) {
    return Rational(static_cast<long long>(value.get<unsigned long long>()));
  }
  if (value.is_number_float()) {
    double v = value.get<double>();
    long long den = 1;
    for (int i = 0; i < 20 && v != std::floor(v); ++i) {
      v *= 2;
      den *= 2;
    }
    if (v != std::floor(v)) {
      throw ConfigError(where,
                        "not exactly representable; use a \"p/q\" string");
    }
    return Rational(static_cast<long long>(v), den);
  }
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(where, e.what());
    }
  }
  throw ConfigError(where, "expected a number or a \"p/q\" string");
}

int int_field(const nlohmann::json& obj, const std::string& key,
              const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer() && !obj.at(key).is_number_unsigned()) {
    throw ConfigError(where, "expected an integer");
  }
  return obj.at(key).get<int>();
}

ConvergenceCriterion parse_convergence(const nlohmann::json& obj,
                                       const RunConfig& config) {
  ConvergenceCriterion criterion;
  reject_unknown_keys(obj, "experiment.convergence",
                      {"criterion", "profile", "window"});
  const std::string kind = obj.value("criterion", "truth_table");
  if (kind == "truth_table") {
    criterion.kind = ConvergenceCriterion::Kind::TruthTable;
  } else if (kind == "target_profile") {
    criterion.kind = ConvergenceCriterion::Kind::TargetProfile;
    if (obj.contains("profile")) {
      try {
        criterion.profile = parse_profile(obj.at("profile").get<std::string>());
      } catch (const std::exception& e) {
        throw ConfigError("experiment.convergence.profile", e.what());
      }
    } else if (config.op.kind == OperatorKind::And &&
               config.machine.clause_count == 1) {
      criterion.profile = parse_profile("IEIE");
    } else {
      throw ConfigError("experiment.convergence.profile",
                        "required unless the operator is AND with m=1");
    }
  } else if (kind == "action_stability") {
    criterion.kind = ConvergenceCriterion::Kind::ActionStability;
    criterion.window =
        int_field(obj, "window", "experiment.convergence.window", 0);
  } else {
    throw ConfigError("experiment.convergence.criterion",
                      "expected truth_table, target_profile or "
                      "action_stability");
  }
  return criterion;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  reject_unknown_keys(doc, "", {"machine", "operator", "experiment", "output"});
  if (!doc.contains("operator")) {
    throw ConfigError("operator", "required section is missing");
  }

  RunConfig config;

  // operator
  {
    const auto& op = doc.at("operator");
    reject_unknown_keys(op, "operator", {"name", "weights"});
    if (!op.contains("name")) throw ConfigError("operator.name", "required");
    const OperatorKind kind =
        operator_kind_from_name(op.at("name").get<std::string>());
    if (op.contains("weights")) {
      std::map<std::string, Rational> weights;
      for (const auto& [key, value] : op.at("weights").items()) {
        weights[key] = rational_field(value, "operator.weights." + key);
      }
      config.op = make_operator(kind, weights);
    } else {
      config.op = make_operator(kind);
    }
  }

  // machine
  {
    nlohmann::json machine = doc.value("machine", nlohmann::json::object());
    reject_unknown_keys(machine, "machine",
                        {"o", "m", "n", "s", "t", "th", "gating"});
    config.machine.input_width =
        int_field(machine, "o", "o", config.op.input_width());
    if (config.machine.input_width != config.op.input_width()) {
      throw ConfigError("o", "must match the operator input width");
    }
    config.machine.clause_count = int_field(machine, "m", "m", 1);
    config.machine.states_per_action = int_field(machine, "n", "n", 100);
    if (machine.contains("s")) {
      config.machine.specificity = rational_field(machine.at("s"), "s");
    }
    config.machine.target = int_field(machine, "t", "t", 1);
    config.machine.threshold =
        int_field(machine, "th", "th", config.machine.target);
    const std::string gating = machine.value("gating", "gated");
    if (gating == "gated") {
      config.machine.gating = GatingMode::Gated;
    } else if (gating == "always_fire") {
      config.machine.gating = GatingMode::AlwaysFire;
    } else {
      throw ConfigError("gating", "expected 'gated' or 'always_fire'");
    }
    config.machine.validate();
  }

  // experiment
  if (doc.contains("experiment")) {
    const auto& exp = doc.at("experiment");
    reject_unknown_keys(exp, "experiment",
                        {"trials", "max_steps", "seed", "convergence"});
    config.has_experiment = true;
    config.experiment.machine = config.machine;
    config.experiment.op = config.op;
    config.experiment.trials = int_field(exp, "trials", "experiment.trials", 1);
    if (exp.contains("max_steps")) {
      config.experiment.max_steps = exp.at("max_steps").get<long>();
    }
    if (exp.contains("seed")) {
      config.experiment.base_seed = exp.at("seed").get<std::uint64_t>();
    }
    config.experiment.convergence = parse_convergence(
        exp.value("convergence", nlohmann::json::object()), config);
    config.experiment.validate();
  }

  // output
  if (doc.contains("output")) {
    const auto& out = doc.at("output");
    reject_unknown_keys(out, "output", {"dir", "formats"});
    config.out_dir = out.value("dir", "");
    if (out.contains("formats")) {
      config.formats.clear();
      for (const auto& fmt : out.at("formats")) {
        const std::string name = fmt.get<std::string>();
        if (name != "json" && name != "csv") {
          throw ConfigError("output.formats", "expected 'json' or 'csv'");
        }
        config.formats.push_back(name);
      }
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::ordered_json resolved_config_json(const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["machine"] = {
      {"o", config.machine.input_width},
      {"m", config.machine.clause_count},
      {"n", config.machine.states_per_action},
      {"s", config.machine.specificity.to_string()},
      {"t", config.machine.target},
      {"th", config.machine.threshold},
      {"gating",
       config.machine.gating == GatingMode::Gated ? "gated" : "always_fire"},
  };
  nlohmann::ordered_json weights = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < config.op.patterns.size(); ++i) {
    std::string key;
    for (Bit b : config.op.patterns[i]) key += static_cast<char>('0' + b);
    weights[key] = config.op.weights[i].to_string();
  }
  doc["operator"] = {{"name", operator_name(config.op.kind)},
                     {"weights", std::move(weights)}};
  if (config.has_experiment) {
    nlohmann::ordered_json convergence;
    switch (config.experiment.convergence.kind) {
      case ConvergenceCriterion::Kind::TruthTable:
        convergence = {{"criterion", "truth_table"}};
        break;
      case ConvergenceCriterion::Kind::TargetProfile:
        convergence = {
            {"criterion", "target_profile"},
            {"profile",
             profile_to_string(config.experiment.convergence.profile,
                               config.machine.clause_count)}};
        break;
      case ConvergenceCriterion::Kind::ActionStability:
        convergence = {{"criterion", "action_stability"},
                       {"window", config.experiment.convergence.window}};
        break;
    }
    doc["experiment"] = {{"trials", config.experiment.trials},
                         {"max_steps", config.experiment.max_steps},
                         {"seed", config.experiment.base_seed},
                         {"convergence", std::move(convergence)}};
  }
  doc["output"] = {{"dir", config.out_dir}, {"formats", config.formats}};
  return doc;
}

}  // namespace tmlab
