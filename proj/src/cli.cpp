#include "tmlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "tmlab/errors.hpp"
#include "tmlab/markov.hpp"
#include "tmlab/run_config.hpp"

namespace tmlab {

namespace {

std::size_t state_cap_from_env() {
  const char* raw = std::getenv("TMLAB_STATE_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultStateCap;
  try {
    const long long value = std::stoll(raw);
    if (value < 1) throw std::invalid_argument("non-positive");
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("TMLAB_STATE_CAP",
                      "must be a positive integer, got '" + std::string(raw) +
                          "'");
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

std::filesystem::path resolve_out_dir(const std::string& flag_value,
                                      const RunConfig& config) {
  if (!flag_value.empty()) return flag_value;
  if (!config.out_dir.empty()) return config.out_dir;
  throw ConfigError("output.dir",
                    "no output directory: pass --out or set output.dir");
}

Sample parse_sample_flag(const std::string& text) {
  std::vector<int> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      values.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw ConfigError("sample", "expected x1,x2,y with bits, got '" + text +
                                      "'");
    }
  }
  if (values.size() != 3) {
    throw ConfigError("sample", "expected exactly x1,x2,y, got '" + text + "'");
  }
  for (int v : values) {
    if (v != 0 && v != 1) {
      throw ConfigError("sample", "entries must be 0 or 1 in '" + text + "'");
    }
  }
  return Sample{{static_cast<Bit>(values[0]), static_cast<Bit>(values[1])},
                static_cast<Bit>(values[2])};
}

int cmd_train(const std::string& config_path, const std::string& out_flag,
              std::optional<std::uint64_t> seed_override) {
  RunConfig config = load_run_config(config_path);
  if (!config.has_experiment) {
    throw ConfigError("experiment", "train requires an experiment section");
  }
  if (seed_override) {
    config.experiment.base_seed = *seed_override;
  }
  const std::filesystem::path out_dir = resolve_out_dir(out_flag, config);
  std::filesystem::create_directories(out_dir);

  const ExperimentReport report = run_batch(config.experiment);

  write_text_file(out_dir / "resolved_config.json",
                  resolved_config_json(config).dump(2) + "\n");
  for (const auto& format : config.formats) {
    if (format == "json") {
      write_text_file(out_dir / "report.json",
                      report_to_json(report).dump(2) + "\n");
    } else {
      write_text_file(out_dir / "report.csv", report_to_csv(report));
    }
  }

  std::cout << "trials: " << report.trials.size()
            << "  converged: " << report.converged_count
            << "  fraction: " << report.convergence_fraction
            << "  p50 steps: " << report.p50_steps
            << "  p90 steps: " << report.p90_steps << "\n";
  for (const auto& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << "wrote " << (out_dir / "report.json").string() << "\n";
  return 0;
}

int cmd_analyze(const std::string& config_path, const std::string& out_flag) {
  const RunConfig config = load_run_config(config_path);
  const std::filesystem::path out_dir = resolve_out_dir(out_flag, config);
  const std::size_t cap = state_cap_from_env();

  const ChainReport report = analyze_chain(config.machine, config.op, cap);

  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "resolved_config.json",
                  resolved_config_json(config).dump(2) + "\n");
  write_text_file(out_dir / "chain_report.json",
                  chain_report_to_json(report).dump(2) + "\n");

  std::cout << "states: " << report.state_count
            << "  closed classes: " << report.classes.size() << "\n";
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    double min_absorption = 1.0;
    for (double v : report.absorption[c]) {
      min_absorption = std::min(min_absorption, v);
    }
    std::cout << "class " << c << ": profile="
              << report.classes[c].action_profile
              << " states=" << report.classes[c].states.size()
              << " min_absorption=" << min_absorption << "\n";
  }
  std::cout << "wrote " << (out_dir / "chain_report.json").string() << "\n";
  return 0;
}

int cmd_diagram(int frozen_case, int scenario, const std::string& sample_text,
                int target_ta, const std::string& out_path,
                const std::string& s_text, int states_per_action) {
  const Sample sample = parse_sample_flag(sample_text);
  Rational s;
  try {
    s = Rational::parse(s_text);
  } catch (const std::exception& e) {
    throw ConfigError("s", e.what());
  }
  if (s <= Rational(1)) throw ConfigError("s", "must be > 1");
  if (states_per_action < 1) throw ConfigError("n", "must be >= 1");

  const auto first = frozen_case_actions(static_cast<FrozenCase>(frozen_case));
  const auto second = scenario_actions(static_cast<Scenario>(scenario));
  const std::array<ActionKind, 4> actions{first[0], first[1], second[0],
                                          second[1]};
  const std::string dot =
      condition_diagram_dot(actions, target_ta, sample, s, states_per_action);

  const std::filesystem::path path(out_path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_text_file(path, dot);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_table(const std::string& operator_name_text) {
  const OperatorSpec spec =
      make_operator(operator_kind_from_name(operator_name_text));
  const int width = spec.input_width();
  for (int k = 1; k <= width; ++k) std::cout << "x" << k << " ";
  std::cout << "| y\n";
  for (const auto& [x, y] : truth_table(spec)) {
    for (Bit b : x) std::cout << static_cast<int>(b) << "  ";
    std::cout << "| " << static_cast<int>(y) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Tsetlin machine training and exact chain analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_value;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  auto* train = app.add_subcommand("train", "run a Monte Carlo training batch");
  train->add_option("--config", config_path, "run config JSON")->required();
  train->add_option("--out", out_value, "output directory");
  train->add_option("--seed", seed_value, "override experiment.seed")
      ->each([&](const std::string&) { seed_given = true; });

  auto* analyze =
      app.add_subcommand("analyze", "exact chain analysis of the game");
  analyze->add_option("--config", config_path, "run config JSON")->required();
  analyze->add_option("--out", out_value, "output directory");

  int case_value = 0;
  int scenario_value = 0;
  int ta_value = 3;
  std::string sample_value;
  std::string dot_path;
  std::string s_value = "4";
  int n_value = 2;

  auto* diagram =
      app.add_subcommand("diagram", "render one condition as a DOT digraph");
  diagram->add_option("--case", case_value, "frozen TA1/TA2 case (1-4)")
      ->required()
      ->check(CLI::Range(1, 4));
  diagram->add_option("--scenario", scenario_value, "TA3/TA4 scenario (1-4)")
      ->required()
      ->check(CLI::Range(1, 4));
  diagram->add_option("--sample", sample_value, "labeled sample x1,x2,y")
      ->required();
  diagram->add_option("--ta", ta_value, "studied automaton (3 or 4)")
      ->check(CLI::Range(3, 4));
  diagram->add_option("--out", dot_path, "output .dot file")->required();
  diagram->add_option("--s", s_value, "specificity substituted into labels");
  diagram->add_option("--n", n_value, "chain states per action to draw");

  std::string operator_value;
  auto* table = app.add_subcommand("table", "print an operator truth table");
  table->add_option("--operator", operator_value, "operator name")->required();

  try {
    std::vector<const char*> argv;
    argv.push_back("tmlab");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) {
      return cmd_train(config_path, out_value,
                       seed_given ? std::optional<std::uint64_t>(seed_value)
                                  : std::nullopt);
    }
    if (analyze->parsed()) return cmd_analyze(config_path, out_value);
    if (diagram->parsed()) {
      return cmd_diagram(case_value, scenario_value, sample_value, ta_value,
                         dot_path, s_value, n_value);
    }
    if (table->parsed()) return cmd_table(operator_value);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const AnalysisTooLargeError& e) {
    std::cerr << "analysis too large: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tmlab
