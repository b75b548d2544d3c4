#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "ptctl.h"

TEST_SUITE_BEGIN("capi");

TEST_CASE("null arguments are rejected with a message") {
  CHECK(ptctl_scenario_load_file(nullptr, nullptr) == PTCTL_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(ptctl_last_error()) > 0);
  CHECK(std::string(ptctl_status_name(PTCTL_ERROR_PARSE)) == "parse_error");
}

TEST_CASE("malformed text reports a parse error") {
  ptctl_scenario* sc = nullptr;
  CHECK(ptctl_scenario_load_string("{ not json", &sc) == PTCTL_ERROR_PARSE);
  CHECK(sc == nullptr);
  CHECK(std::string(ptctl_last_error()).find("line") != std::string::npos);
}

TEST_CASE("unknown preset reports an error") {
  ptctl_scenario* sc = nullptr;
  CHECK(ptctl_scenario_preset("nope", &sc) != PTCTL_OK);
}

TEST_CASE("preset runs end to end through the C surface") {
  ptctl_scenario* sc = nullptr;
  REQUIRE(ptctl_scenario_preset("table2_prescribed", &sc) == PTCTL_OK);
  CHECK(std::string(ptctl_scenario_name(sc)) == "wingrock_pt");
  CHECK(std::string(ptctl_scenario_model_name(sc)) == "wing_rock");

  ptctl_trajectory* traj = nullptr;
  REQUIRE(ptctl_run(sc, &traj) == PTCTL_OK);
  const size_t rows = ptctl_trajectory_rows(traj);
  CHECK(rows > 1000);
  CHECK(ptctl_trajectory_state_count(traj) == 2);
  CHECK(ptctl_trajectory_param_count(traj) == 2);
  CHECK(std::string(ptctl_trajectory_column_name(traj, 0)) == "t");
  CHECK(std::string(ptctl_trajectory_column_name(traj, 2)) == "x1");

  double first_x1 = 0, last_x1 = 0;
  CHECK(ptctl_trajectory_cell(traj, 0, 2, &first_x1) == PTCTL_OK);
  CHECK(ptctl_trajectory_cell(traj, rows - 1, 2, &last_x1) == PTCTL_OK);
  CHECK(first_x1 == doctest::Approx(0.2));
  CHECK(std::abs(last_x1) < 1e-2);

  double bad = 0;
  CHECK(ptctl_trajectory_cell(traj, rows + 5, 0, &bad) != PTCTL_OK);

  double settle = 0, peak = 0, norm = 0;
  CHECK(ptctl_settling_time(traj, 0.01, 0, &settle) == PTCTL_OK);
  CHECK(settle > 0.0);
  CHECK(settle < 0.5);
  CHECK(ptctl_settling_time(traj, 0.01, 7, &settle) == PTCTL_ERROR_INVALID_ARGUMENT);
  CHECK(ptctl_peak_input(traj, &peak) == PTCTL_OK);
  CHECK(peak > 0.0);
  CHECK(ptctl_terminal_state_norm(traj, &norm) == PTCTL_OK);
  CHECK(norm < 0.05);

  CHECK(ptctl_trajectory_write_csv(traj, "capi_out.csv") == PTCTL_OK);
  CHECK(ptctl_trajectory_write_plot_script(traj, "capi_out.csv", "capi_out.gp") == PTCTL_OK);
  CHECK(ptctl_trajectory_write_csv(traj, "/nonexistent-dir/x.csv") != PTCTL_OK);

  ptctl_trajectory_free(traj);
  ptctl_scenario_free(sc);
}

TEST_CASE("gain violations surface as validation errors") {
  const char* text = R"({
    "name": "bad_gains",
    "model": { "name": "wing_rock" },
    "controller": "filter_prescribed_time",
    "timescale": { "kind": "prescribed_time", "T": 0.5 },
    "gains": { "k": [1, 3], "Gamma": 1.0, "gamma_delta": 0.01, "gamma_rho": 0.01,
               "epsilon": 0.1 },
    "initial": { "x": [0.2, 0], "theta_hat": [0, 0], "delta_hat": 0, "rho_hat": 1 }
  })";
  ptctl_scenario* sc = nullptr;
  REQUIRE(ptctl_scenario_load_string(text, &sc) == PTCTL_OK);
  ptctl_trajectory* traj = nullptr;
  CHECK(ptctl_run(sc, &traj) == PTCTL_ERROR_VALIDATION);
  CHECK(std::string(ptctl_last_error()).find("k_1") != std::string::npos);
  ptctl_scenario_free(sc);
}

TEST_CASE("verify runs a single named check") {
  ptctl_check_result results[8];
  size_t count = 0;
  REQUIRE(ptctl_verify("saturation_inequality", 7, results, 8, &count) == PTCTL_OK);
  REQUIRE(count == 1);
  CHECK(std::string(results[0].name) == "saturation_inequality");
  CHECK(results[0].passed == 1);
  CHECK(results[0].worst_margin > 0.0);
}

TEST_SUITE_END();
