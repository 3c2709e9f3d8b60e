// Command-line front end: runs verification suites and convergence sweeps,
// emitting JSON or CSV reports.
//
// Exit codes: 0 when every check passes (or the sweep completes), 1 when at
// least one check fails, 2 on usage, configuration, or output errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rp2bundle/report.hpp"

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

// "name=value" tolerance override.
std::pair<std::string, double> parse_tol(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("--tol expects name=value, got: " + arg);
  const std::string name = arg.substr(0, eq);
  const std::string value = arg.substr(eq + 1);
  std::size_t used = 0;
  double tol = 0.0;
  try {
    tol = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--tol " + name + ": bad value " + value);
  }
  if (used != value.size()) throw std::invalid_argument("--tol " + name + ": bad value " + value);
  return {name, tol};
}

// Relative output paths land in RP2BUNDLE_OUT_DIR when that is set.
std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("RP2BUNDLE_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  return path;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path path = resolve_output(out);
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output path " + path.string());
  file << text;
  if (!file.good()) throw std::runtime_error("failed writing output path " + path.string());
}

nlohmann::json sweep_to_json(const rp2bundle::SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows)
    rows.push_back({{"parameter", row.parameter},
                    {"phase_re", row.phase_re},
                    {"phase_im", row.phase_im},
                    {"error", row.error}});
  return nlohmann::json{{"check", result.check},   {"parameter", result.parameter},
                        {"rows", rows},            {"slope", result.slope},
                        {"at_floor", result.at_floor}, {"floor", result.floor}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rp2bundle verification suites and convergence sweeps"};
  app.require_subcommand(1);

  rp2bundle::RunConfig config;
  std::string format_name = "json";
  std::vector<std::string> tol_args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--grid-n", config.grid_n, "Random sample count for pointwise checks")
        ->capture_default_str();
    cmd->add_option("--path-steps", config.path_steps, "Discretization for transport checks")
        ->capture_default_str();
    cmd->add_option("--tol", tol_args, "Tolerance override, name=value (repeatable)");
    cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", config.output_path,
                    "Output path (default stdout; relative paths resolve under "
                    "RP2BUNDLE_OUT_DIR when set)");
  };

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "One of: " + join(rp2bundle::suite_names()))->required();
  add_common(verify);

  std::string check;
  std::string parameter;
  std::vector<double> values;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a convergence sweep for one check");
  sweep->add_option("check", check, "One of: " + join(rp2bundle::sweepable_checks()))->required();
  sweep->add_option("--param", parameter, "Swept parameter (n_steps, or h for pt-condition)")
      ->required();
  sweep->add_option("--values", values, "Comma-separated parameter values")
      ->required()
      ->delimiter(',');
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& arg : tol_args) config.tol_overrides.insert(parse_tol(arg));
    // Sweeps are tables; they default to CSV unless a format is requested.
    if (app.got_subcommand(sweep) && sweep->count("--format") == 0) format_name = "csv";
    config.format = format_name == "csv" ? rp2bundle::RunConfig::Format::csv
                                         : rp2bundle::RunConfig::Format::json;

    if (app.got_subcommand(verify)) {
      const rp2bundle::SuiteResult result = rp2bundle::run_suite_result(suite, config);
      std::string text;
      if (config.format == rp2bundle::RunConfig::Format::csv) {
        text = rp2bundle::suite_to_csv(result);
      } else {
        text = rp2bundle::suite_to_json(result, config).dump(2) + "\n";
      }
      emit(text, config.output_path);
      return result.all_pass ? 0 : 1;
    }

    const rp2bundle::SweepResult result =
        rp2bundle::convergence_sweep(check, parameter, values, config);
    std::string text;
    if (config.format == rp2bundle::RunConfig::Format::json) {
      text = sweep_to_json(result).dump(2) + "\n";
    } else {
      text = rp2bundle::sweep_to_csv(result);
    }
    emit(text, config.output_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
