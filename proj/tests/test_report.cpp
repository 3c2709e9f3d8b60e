#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rp2bundle/report.hpp"

using namespace rp2bundle;

namespace {

// Cheap settings for suites whose checks only sample point grids.  Path
// discretization stays at the default because the orbit-transport residual
// tolerances assume the default step density.
RunConfig small_config(std::uint64_t seed = 5) {
  RunConfig config;
  config.grid_n = 150;
  config.path_steps = 64;
  config.seed = seed;
  return config;
}

RunConfig transport_config(std::uint64_t seed = 5) {
  RunConfig config;
  config.grid_n = 150;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("report: config validation catches bad values") {
  RunConfig config = small_config();
  CHECK_NOTHROW(config.validate());

  config.grid_n = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = small_config();
  config.path_steps = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = small_config();
  config.tol_overrides["projector-identities"] = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.tol_overrides["projector-identities"] = -1e-3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("report: suite catalogue is stable") {
  const std::vector<std::string> expected = {
      "projector",  "module-iso",      "equivariance", "flatness",
      "holonomy",   "orbit-transport", "two-spin",     "exchange",
      "pt-condition", "spin-operators", "singlevaluedness", "all"};
  CHECK(suite_names() == expected);

  CHECK_THROWS_AS(run_suite("not-a-suite", small_config()), std::invalid_argument);
}

TEST_CASE("report: projector suite passes and keeps its check order") {
  const std::vector<CheckReport> checks = run_suite("projector", small_config());
  const std::vector<std::string> expected = {
      "psi-unit-norm",       "psi-odd",
      "projector-identities", "projector-antipodal",
      "real-projector-identities", "projector-intertwiner",
      "u-matrix-unitary",    "u-tilde-real-sign"};
  REQUIRE(checks.size() == expected.size());
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CHECK(checks[i].check_name == expected[i]);
    CHECK(checks[i].pass);
    CHECK(checks[i].pass == (checks[i].max_residual <= checks[i].tolerance));
    CHECK(checks[i].n_samples > 0);
    CHECK(checks[i].wall_time_ms >= 0);
  }
}

TEST_CASE("report: every registered check passes on a reduced point grid") {
  const SuiteResult result = run_suite_result("all", transport_config(21));
  CHECK(result.all_pass);
  CHECK(result.suite == "all");

  std::set<std::string> names;
  for (const CheckReport& check : result.checks) {
    CHECK(names.insert(check.check_name).second);
    CHECK(check.pass);
  }
  CHECK(result.checks.size() >= 27);

  // Checks are seeded by name, so a check reports the same residual whether
  // it runs inside its own suite or inside "all".
  const std::vector<CheckReport> solo = run_suite("projector", transport_config(21));
  for (const CheckReport& check : solo) {
    const auto it = std::find_if(result.checks.begin(), result.checks.end(),
                                 [&](const CheckReport& c) {
                                   return c.check_name == check.check_name;
                                 });
    REQUIRE(it != result.checks.end());
    CHECK(it->max_residual == check.max_residual);
    CHECK(it->n_samples == check.n_samples);
  }
}

TEST_CASE("report: tolerance overrides change the verdict") {
  RunConfig config = small_config();
  config.tol_overrides["projector-identities"] = 1e-30;
  const SuiteResult result = run_suite_result("projector", config);
  CHECK_FALSE(result.all_pass);
  for (const CheckReport& check : result.checks) {
    if (check.check_name == "projector-identities") {
      CHECK(check.tolerance == 1e-30);
      CHECK_FALSE(check.pass);
    } else {
      CHECK(check.pass);
    }
  }
}

TEST_CASE("report: runs with the same seed are identical apart from timing") {
  for (const std::string suite : {"module-iso", "holonomy"}) {
    const std::vector<CheckReport> a = run_suite(suite, small_config(11));
    const std::vector<CheckReport> b = run_suite(suite, small_config(11));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].check_name == b[i].check_name);
      CHECK(a[i].n_samples == b[i].n_samples);
      CHECK(a[i].max_residual == b[i].max_residual);
      CHECK(a[i].tolerance == b[i].tolerance);
      CHECK(a[i].pass == b[i].pass);
      CHECK(a[i].params == b[i].params);
    }
  }

  // A different seed moves the sampled residuals of the random-grid checks.
  const std::vector<CheckReport> c = run_suite("module-iso", small_config(12));
  const std::vector<CheckReport> d = run_suite("module-iso", small_config(13));
  bool any_changed = false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].max_residual != d[i].max_residual) any_changed = true;
  CHECK(any_changed);
}

TEST_CASE("report: json serialization carries the expected schema") {
  RunConfig config = small_config();
  config.tol_overrides["psi-odd"] = 1e-12;
  const SuiteResult result = run_suite_result("projector", config);
  const nlohmann::json j = suite_to_json(result, config);

  CHECK(j.at("suite").is_string());
  CHECK(j.at("all_pass").is_boolean());
  CHECK(j.at("config").at("grid_n").is_number_integer());
  CHECK(j.at("config").at("path_steps").is_number_integer());
  CHECK(j.at("config").at("seed").is_number());
  CHECK(j.at("config").at("tol_overrides").at("psi-odd") == 1e-12);

  REQUIRE(j.at("checks").is_array());
  REQUIRE(j.at("checks").size() == result.checks.size());
  for (const auto& check : j.at("checks")) {
    CHECK(check.at("check_name").is_string());
    CHECK(check.at("n_samples").is_number_integer());
    CHECK(check.at("max_residual").is_number());
    CHECK(check.at("tolerance").is_number());
    CHECK(check.at("pass").is_boolean());
    CHECK(check.at("params").is_object());
    CHECK(check.at("wall_time_ms").is_number_integer());
  }
}

TEST_CASE("report: csv serialization has a header and one record per check") {
  const SuiteResult result = run_suite_result("projector", small_config());
  const std::string csv = suite_to_csv(result);

  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(csv);
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);

  REQUIRE(lines.size() == result.checks.size() + 1);
  CHECK(lines[0] == "check_name,n_samples,max_residual,tolerance,pass,wall_time_ms,params");
  CHECK(lines[1].rfind("psi-unit-norm,", 0) == 0);
}

TEST_CASE("report: sweep inputs are validated") {
  const RunConfig config = small_config();
  const std::vector<std::string> expected = {
      "rp2-generator-holonomy", "contractible-loop-holonomy", "bloch-monopole-control",
      "orbit-transport-residual", "pt-condition"};
  CHECK(sweepable_checks() == expected);

  CHECK_THROWS_AS(convergence_sweep("rp2-generator-holonomy", "n_steps", {}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep("unknown-check", "n_steps", {100.0}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep("rp2-generator-holonomy", "h", {100.0}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep("pt-condition", "n_steps", {1e-3}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep("pt-condition", "h", {0.5}, config), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep("rp2-generator-holonomy", "n_steps", {4.0}, config),
                  std::invalid_argument);
}

TEST_CASE("report: parallel transport sweep shows second order convergence") {
  const SweepResult sweep =
      convergence_sweep("pt-condition", "h", {1e-3, 5e-4, 2.5e-4}, small_config());
  REQUIRE(sweep.rows.size() == 3);
  CHECK(sweep.parameter == "h");
  CHECK_FALSE(sweep.at_floor);
  CHECK(sweep.slope == doctest::Approx(-2.0).epsilon(0.2));
  for (const SweepRow& row : sweep.rows) CHECK(row.error > 0.0);
  CHECK(sweep.rows[0].error > sweep.rows[2].error);
}

TEST_CASE("report: holonomy sweep sits at the rounding floor with unit phases") {
  const SweepResult sweep =
      convergence_sweep("rp2-generator-holonomy", "n_steps", {100.0, 1000.0}, small_config());
  REQUIRE(sweep.rows.size() == 2);
  CHECK(sweep.at_floor);
  CHECK(sweep.slope == 0.0);
  for (const SweepRow& row : sweep.rows) {
    CHECK(row.error <= sweep.floor);
    CHECK(std::abs(row.phase_re - (-1.0)) <= 1e-9);
    CHECK(std::abs(row.phase_im) <= 1e-9);
  }
}

TEST_CASE("report: bloch control sweep converges with a genuine slope") {
  const SweepResult sweep =
      convergence_sweep("bloch-monopole-control", "n_steps", {200.0, 400.0, 800.0},
                        small_config());
  REQUIRE(sweep.rows.size() == 3);
  CHECK_FALSE(sweep.at_floor);
  CHECK(sweep.slope <= -0.5);

  const std::string csv = sweep_to_csv(sweep);
  CHECK(csv.rfind("parameter,phase_re,phase_im,error", 0) == 0);
  CHECK(csv.find("# check=bloch-monopole-control") != std::string::npos);
  CHECK(csv.find("slope=") != std::string::npos);
  CHECK(csv.find("at_floor=0") != std::string::npos);
}
