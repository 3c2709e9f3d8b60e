#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace rp2bundle {

struct RunConfig {
  int grid_n = 2000;       // sample count for pointwise checks
  int path_steps = 4000;   // discretization for transport checks
  std::uint64_t seed = 0;
  std::map<std::string, double> tol_overrides;  // check name -> tolerance

  enum class Format { json, csv };
  Format format = Format::json;
  std::string output_path;  // empty = stdout

  void validate() const;  // grid_n >= 1, path_steps >= 2, tolerances > 0
};

struct CheckReport {
  std::string check_name;
  long n_samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // always max_residual <= tolerance
  std::map<std::string, std::string> params;
  std::int64_t wall_time_ms = 0;
};

// Known suite names, "all" last.
const std::vector<std::string>& suite_names();

// Runs the named suite.  Throws std::invalid_argument for unknown names.
std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& config);

struct SuiteResult {
  std::string suite;
  std::vector<CheckReport> checks;
  bool all_pass = false;
};

SuiteResult run_suite_result(const std::string& suite, const RunConfig& config);

nlohmann::json suite_to_json(const SuiteResult& result, const RunConfig& config);
std::string suite_to_csv(const SuiteResult& result);

// Convergence sweep over one parameter of a sweepable check.  The error
// column is the check's scalar error at that parameter value; phase columns
// are filled for holonomy-type checks and zero otherwise.  The fitted slope
// is taken in log-log coordinates against the resolution (n_steps itself, or
// 1/h for step-size parameters), using only points above the noise floor.
struct SweepRow {
  double parameter;
  double phase_re;
  double phase_im;
  double error;
};

struct SweepResult {
  std::string check;
  std::string parameter;
  std::vector<SweepRow> rows;
  double slope = 0.0;      // fitted log-log slope; 0 when all points at floor
  bool at_floor = false;   // every measured error at or below the noise floor
  double floor = 0.0;
};

const std::vector<std::string>& sweepable_checks();
SweepResult convergence_sweep(const std::string& check, const std::string& parameter,
                              const std::vector<double>& values, const RunConfig& config);
std::string sweep_to_csv(const SweepResult& result);

}  // namespace rp2bundle
