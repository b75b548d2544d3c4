#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "doctest.h"
#include "oracle_reference.hpp"
#include "ptctl/backstepping.hpp"
#include "ptctl/model.hpp"
#include "ptctl/timescale.hpp"

using namespace ptctl;

namespace {

GainConfig benchmark_gains() {
  GainConfig g;
  g.k = Eigen::Vector3d(6.0, 6.0, 6.0);
  g.Gamma = 0.01 * Eigen::MatrixXd::Identity(1, 1);
  g.gamma_delta = 0.01;
  g.gamma_rho = 0.01;
  g.epsilon = EpsilonSchedule::constant(0.1);
  g.T = 2.0;
  return g;
}

oracle::BenchmarkInputs oracle_inputs(const GainConfig& g, const Eigen::Vector3d& x,
                                      const AdaptiveState& a, const std::vector<double>& mu,
                                      double eps) {
  oracle::BenchmarkInputs in;
  in.k1 = g.k[0];
  in.k2 = g.k[1];
  in.k3 = g.k[2];
  in.gamma = g.Gamma(0, 0);
  in.gamma_delta = g.gamma_delta;
  in.gamma_rho = g.gamma_rho;
  in.eps = eps;
  in.x1 = x[0];
  in.x2 = x[1];
  in.x3 = x[2];
  in.th = a.theta_hat[0];
  in.dh = a.delta_hat;
  in.rho = a.rho_hat;
  in.mu0 = mu[0];
  in.mu1 = mu[1];
  in.mu2 = mu[2];
  return in;
}

StrictFeedbackModel scalar_plant() {
  StrictFeedbackModel m;
  m.name = "scalar";
  m.n = 1;
  m.q = 1;
  m.phi.resize(1);
  m.phi[0] = [](const std::vector<Jet>& x) { return std::vector<Jet>{x[0]}; };
  m.theta_true = [](double, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Constant(1, 0.7);
  };
  m.b_true = [](double) { return 1.0; };
  m.b_lower = 0.9;
  m.control_sign = +1;
  return m;
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE_BEGIN("backstepping");

TEST_CASE("gain validation accepts the published setups") {
  const StrictFeedbackModel bench = builtin_benchmark();
  CHECK(validate_gains(benchmark_gains(), bench, 1.0).passed());

  GainConfig bad = benchmark_gains();
  bad.k[0] = 2.0;  // must exceed n = 3
  const ValidationReport report = validate_gains(bad, bench, 1.0);
  CHECK_FALSE(report.passed());
  CHECK(report.summary().find("k_1") != std::string::npos);

  const StrictFeedbackModel wr = builtin_wing_rock();
  GainConfig wg;
  wg.k = Eigen::Vector2d(3.0, 3.0);
  wg.Gamma = Eigen::MatrixXd::Identity(2, 2);
  wg.gamma_delta = 0.01;
  wg.gamma_rho = 0.01;
  wg.epsilon = EpsilonSchedule::constant(0.1);
  wg.T = 0.5;
  CHECK(validate_gains(wg, wr, 1.0).passed());
}

TEST_CASE("gain validation flags structural problems") {
  const StrictFeedbackModel bench = builtin_benchmark();
  GainConfig g = benchmark_gains();
  g.Gamma = -0.01 * Eigen::MatrixXd::Identity(1, 1);
  g.gamma_rho = 0.0;
  g.epsilon = EpsilonSchedule::constant(-1.0);
  const ValidationReport report = validate_gains(g, bench, 1.0);
  CHECK(report.violations.size() >= 3);
}

TEST_CASE("origin maps to zero input and zero adaptation") {
  const StrictFeedbackModel bench = builtin_benchmark();
  const GainConfig g = benchmark_gains();
  AdaptiveState a;
  a.theta_hat = Eigen::VectorXd::Constant(1, -0.4);
  a.delta_hat = 0.7;
  a.rho_hat = 1.3;
  const TimeScale ts = TimeScale::prescribed_time(2.0);
  const ControlOutput co = control_law(bench, g, Eigen::Vector3d::Zero(), a, 0.3, ts);
  CHECK(co.u == 0.0);
  CHECK(co.u_bar == 0.0);
  CHECK(co.z.norm() == 0.0);
  CHECK(co.alpha.norm() == 0.0);
  CHECK(co.theta_hat_rate.norm() == 0.0);
  CHECK(co.delta_hat_rate == 0.0);
  CHECK(co.rho_hat_rate == 0.0);
  CHECK(co.K > 0.0);
}

TEST_CASE("single-state law matches the direct transcription") {
  const StrictFeedbackModel m = scalar_plant();
  GainConfig g;
  g.k = Eigen::VectorXd::Constant(1, 4.0);
  g.Gamma = 0.5 * Eigen::MatrixXd::Identity(1, 1);
  g.gamma_delta = 0.2;
  g.gamma_rho = 0.3;
  g.epsilon = EpsilonSchedule::constant(0.15);
  AdaptiveState a;
  a.theta_hat = Eigen::VectorXd::Constant(1, -0.8);
  a.delta_hat = 0.6;
  a.rho_hat = 1.1;
  const double x1 = 0.9, mu = 2.5, eps = 0.15;
  const ControlOutput co =
      control_law_at(m, g, Eigen::VectorXd::Constant(1, x1), a, {mu}, eps);

  const double w = x1, z = x1;
  const double S = std::sqrt(z * z * w * w + eps * eps);
  const double psi = w * a.theta_hat[0];
  const double K = 4.0 * mu + a.delta_hat * w * w / S +
                   psi * psi / std::sqrt(z * z * psi * psi + eps * eps);
  CHECK(co.K == doctest::Approx(K).epsilon(1e-14));
  CHECK(co.u == doctest::Approx(-a.rho_hat * K * z).epsilon(1e-14));
  CHECK(co.theta_hat_rate[0] == doctest::Approx(0.5 * w * z).epsilon(1e-14));
  CHECK(co.delta_hat_rate == doctest::Approx(0.2 * z * z * w * w / S).epsilon(1e-14));
  CHECK(co.rho_hat_rate == doctest::Approx(-0.3 * z * co.u_bar).epsilon(1e-14));
}

TEST_CASE("matches the hand-derived benchmark reference") {
  const StrictFeedbackModel bench = builtin_benchmark();
  const GainConfig g = benchmark_gains();
  const TimeScale ts = TimeScale::prescribed_time(2.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> ut(0.0, 1.8);
  std::uniform_real_distribution<double> ud(0.0, 1.5);

  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d x;
    AdaptiveState a;
    double t;
    if (trial == 0) {
      x = Eigen::Vector3d(0.2, 0.0, -0.2);
      a.theta_hat = Eigen::VectorXd::Zero(1);
      a.delta_hat = 0.0;
      a.rho_hat = 1.0;
      t = 0.0;
    } else {
      x = Eigen::Vector3d(ux(rng), ux(rng), ux(rng));
      a.theta_hat = Eigen::VectorXd::Constant(1, 2.0 * ux(rng));
      a.delta_hat = ud(rng);
      a.rho_hat = 1.0 + 0.5 * ux(rng);
      t = ut(rng);
    }
    std::vector<double> mu(3);
    for (int j = 0; j < 3; ++j) mu[j] = ts.mu_deriv(t, j);
    const double eps = 0.1;

    const ControlOutput co = control_law_at(bench, g, x, a, mu, eps);
    const oracle::BenchmarkOutputs ref =
        oracle::benchmark_reference(oracle_inputs(g, x, a, mu, eps));

    CHECK(rel_diff(co.alpha[0], ref.alpha1) < 1e-12);
    CHECK(rel_diff(co.alpha[1], ref.alpha2) < 1e-12);
    CHECK(rel_diff(co.z[1], ref.z2) < 1e-12);
    CHECK(rel_diff(co.z[2], ref.z3) < 1e-12);
    CHECK(rel_diff(co.w[1][0], ref.w2) < 1e-12);
    CHECK(rel_diff(co.w[2][0], ref.w3) < 1e-12);
    CHECK(rel_diff(co.Psi, ref.Psi) < 1e-10);
    CHECK(rel_diff(co.K, ref.K) < 1e-10);
    CHECK(rel_diff(co.u, ref.u) < 1e-10);
    CHECK(rel_diff(co.theta_hat_rate[0], ref.theta_rate) < 1e-12);
    CHECK(rel_diff(co.delta_hat_rate, ref.delta_rate) < 1e-12);
    CHECK(rel_diff(co.rho_hat_rate, ref.rho_rate) < 1e-10);
    for (int k = 0; k < 7; ++k) {
      CHECK(rel_diff(co.alpha_partials[0][k], ref.dalpha1[k]) < 1e-11);
      CHECK(rel_diff(co.alpha_partials[1][k], ref.dalpha2[k]) < 1e-11);
    }
  }
}

TEST_CASE("structural invariants at random points") {
  const StrictFeedbackModel bench = builtin_benchmark();
  const GainConfig g = benchmark_gains();
  const TimeScale ts = TimeScale::prescribed_time(2.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> ut(0.0, 1.9);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector3d x(ux(rng), ux(rng), ux(rng));
    AdaptiveState a;
    a.theta_hat = Eigen::VectorXd::Constant(1, ux(rng));
    a.delta_hat = std::abs(ux(rng));
    a.rho_hat = 1.0 + 0.4 * std::abs(ux(rng));
    const double t = ut(rng);
    const ControlOutput co = control_law(bench, g, x, a, t, ts);
    CHECK(co.K > 0.0);
    CHECK(co.u_bar + co.K * co.z[2] == 0.0);  // exact by construction
    CHECK(co.delta_hat_rate >= 0.0);
    // positive control direction: rho rate is gamma_rho K z_n^2 >= 0
    CHECK(co.rho_hat_rate >= 0.0);
    CHECK(co.rho_hat_rate ==
          doctest::Approx(g.gamma_rho * co.K * co.z[2] * co.z[2]).epsilon(1e-12));
  }
}

TEST_CASE("damping inequality") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> upos(1e-6, 10.0);
  for (int i = 0; i < 20000; ++i) {
    const double z = u(rng);
    const double w2 = std::abs(u(rng));  // w^T w
    const double eps = upos(rng);
    const double delta = std::abs(u(rng));
    const double lhs = delta * std::abs(z) * std::sqrt(w2);
    const double rhs = delta * eps + delta * z * z * w2 / std::sqrt(z * z * w2 + eps * eps);
    CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("input-bracket bound") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_real_distribution<double> upos(1e-6, 10.0);
  for (int i = 0; i < 20000; ++i) {
    const double z = u(rng), psi = u(rng), eps = upos(rng);
    const double kappa = -psi * psi / std::sqrt(z * z * psi * psi + eps * eps);
    CHECK(kappa * z * z + psi * z <= eps);
  }
}

TEST_CASE("radius machinery vanishes structurally when disabled") {
  // with delta_hat = 0 and gamma_delta = 0 the law collapses to the
  // damping-free recursion
  const StrictFeedbackModel bench = builtin_benchmark();
  GainConfig g = benchmark_gains();
  g.gamma_delta = 0.0;
  const TimeScale ts = TimeScale::prescribed_time(2.0);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::Vector3d x(ux(rng), ux(rng), ux(rng));
    AdaptiveState a;
    a.theta_hat = Eigen::VectorXd::Constant(1, ux(rng));
    a.delta_hat = 0.0;
    a.rho_hat = 1.0;
    const double t = 0.4;
    std::vector<double> mu(3);
    for (int j = 0; j < 3; ++j) mu[j] = ts.mu_deriv(t, j);

    const ControlOutput co = control_law_at(bench, g, x, a, mu, 0.1);

    const double th = a.theta_hat[0];
    const double a1 = -g.k[0] * mu[0] * x[0] - x[0] * th;  // damping-free form
    const double a1_x1 = -g.k[0] * mu[0] - th;
    const double z2 = x[1] - a1;
    const double w2 = -a1_x1 * x[0];
    const double tau_th2 = x[0] * x[0] + w2 * z2;
    const double a2 = -g.k[1] * mu[0] * z2 - w2 * th + a1_x1 * x[1] - x[0] +
                      g.Gamma(0, 0) * (-x[0]) * tau_th2 + (-g.k[0] * x[0]) * mu[1];
    CHECK(co.alpha[0] == doctest::Approx(a1).epsilon(1e-13));
    CHECK(co.alpha[1] == doctest::Approx(a2).epsilon(1e-12));
  }
}

TEST_CASE("the law is a pure function and safe to evaluate concurrently") {
  const StrictFeedbackModel bench = builtin_benchmark();
  const GainConfig g = benchmark_gains();
  const TimeScale ts = TimeScale::prescribed_time(2.0);
  const Eigen::Vector3d x(0.4, -0.3, 0.6);
  AdaptiveState a;
  a.theta_hat = Eigen::VectorXd::Constant(1, 0.2);
  a.delta_hat = 0.3;
  a.rho_hat = 1.1;
  const ControlOutput ref = control_law(bench, g, x, a, 0.7, ts);

  std::vector<std::thread> workers;
  std::array<double, 8> results{};
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      for (int rep = 0; rep < 50; ++rep)
        results[w] = control_law(bench, g, x, a, 0.7, ts).u;
    });
  }
  for (std::thread& th : workers) th.join();
  for (double u : results) CHECK(u == ref.u);
}

TEST_CASE("congelation split is exact") {
  AdaptiveState a;
  a.theta_hat = Eigen::VectorXd::Constant(1, 0.5);
  const Eigen::VectorXd theta_t = Eigen::VectorXd::Constant(1, 1.8);
  const Eigen::VectorXd ell = Eigen::VectorXd::Constant(1, 1.0);
  const auto [perturbation, residual] = congelation_decompose(theta_t, a, ell);
  CHECK(perturbation[0] == doctest::Approx(0.8));
  CHECK(residual[0] == doctest::Approx(0.5));
  CHECK((a.theta_hat + residual + perturbation - theta_t).norm() == 0.0);

  // equal center and estimate
  AdaptiveState b;
  b.theta_hat = ell;
  const auto [p2, r2] = congelation_decompose(ell, b, ell);
  CHECK(p2.norm() == 0.0);
  CHECK(r2.norm() == 0.0);

  // wing-rock split on the raised side of the square wave
  const StrictFeedbackModel wr = builtin_wing_rock();
  const double t = 0.4;  // sin(3t) > 0
  AdaptiveState c;
  c.theta_hat = Eigen::VectorXd::Zero(2);
  const auto [p3, r3] =
      congelation_decompose(wr.theta_true(t, Eigen::Vector2d::Zero()), c, wr.truth->ell_theta);
  CHECK(p3[0] == doctest::Approx(0.2 * -26.6667));
  CHECK(p3[1] == doctest::Approx(0.2 * 0.67485));
}

TEST_SUITE_END();
