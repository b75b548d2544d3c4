// Integration checks over the bundled scenario files: they must load,
// validate, run inside the time budget, and produce byte-stable CSV output.

#include <chrono>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ptctl/scenario.hpp"
#include "ptctl/sim.hpp"
#include "ptctl/trajectory_io.hpp"

using namespace ptctl;

#ifndef PTCTL_SCENARIO_DIR
#define PTCTL_SCENARIO_DIR "scenarios"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE_BEGIN("bundle");

TEST_CASE("every bundled scenario runs inside the time budget") {
  for (const char* stem :
       {"benchmark_t1", "benchmark_asymptotic", "wingrock_pt", "wingrock_superexponential",
        "wingrock_exponential", "wingrock_asymptotic", "wingrock_nonstop"}) {
    const std::string path = std::string(PTCTL_SCENARIO_DIR) + "/" + stem + ".scenario";
    INFO(path);
    const Scenario sc = load_scenario_file(path);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory traj = integrate(sc);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(elapsed < 60.0);
    CHECK(traj.rows() > 10);
    for (std::size_t r = 0; r < traj.rows(); ++r) {
      CHECK(std::isfinite(traj.u[r]));
      CHECK(traj.x.row(r).allFinite());
    }
  }
}

TEST_CASE("csv output is byte-stable across identical runs") {
  const Scenario sc = load_scenario_file(std::string(PTCTL_SCENARIO_DIR) +
                                         "/wingrock_pt.scenario");
  write_trajectory_csv(integrate(sc), "stability_a.csv");
  write_trajectory_csv(integrate(sc), "stability_b.csv");
  const std::string a = slurp("stability_a.csv");
  CHECK(a.size() > 1000);
  CHECK(a == slurp("stability_b.csv"));
}

TEST_CASE("benchmark parameter stays inside its declared radius along the run") {
  // the benchmark's destabilizing signal is threaded with the state, so the
  // bound |theta(t)| <= 2 is a trajectory property rather than a pointwise one
  Scenario sc = scenario_preset("benchmark_t1");
  sc.integration.h = 1e-3;
  const Trajectory traj = integrate(sc);
  const GroundTruth& truth = *sc.model.truth;
  for (std::size_t r = 0; r < traj.rows(); ++r) {
    const Eigen::VectorXd th = sc.model.theta_true(traj.t[r], traj.x.row(r).transpose());
    CHECK(th.cwiseAbs().maxCoeff() <= 2.0 + 1e-12);
    CHECK((th - truth.ell_theta).norm() <= truth.delta_theta + 1e-12);
  }
}

TEST_CASE("time-varying gain beats the constant-gain variant on the benchmark") {
  // recorded metrics for the two bundled benchmark setups: the
  // prescribed-time run settles earlier and with a smaller input peak
  const Metrics pt = compute_metrics(integrate(scenario_preset("benchmark_t1")), 0.01);
  const Metrics cg =
      compute_metrics(integrate(scenario_preset("benchmark_asymptotic")), 0.01);
  REQUIRE(pt.settled[0]);
  REQUIRE(cg.settled[0]);
  CHECK(pt.band_entry_time[0] <= 2.0);  // settles within the prescribed horizon
  CHECK(pt.band_entry_time[0] < cg.band_entry_time[0]);
  CHECK(pt.peak_u < cg.peak_u);
}

TEST_SUITE_END();
