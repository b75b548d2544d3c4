#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "ptctl/model.hpp"
#include "ptctl/timescale.hpp"

namespace ptctl {

/// Robustness parameter: a positive constant or the schedule
/// eps(t) = scale * e^{rate t}.
struct EpsilonSchedule {
  enum class Kind { Constant, Exponential } kind = Kind::Constant;
  double scale = 0.1;
  double rate = 0.0;

  static EpsilonSchedule constant(double v) { return {Kind::Constant, v, 0.0}; }
  static EpsilonSchedule exponential(double scale, double rate) {
    return {Kind::Exponential, scale, rate};
  }
  double operator()(double t) const {
    return kind == Kind::Constant ? scale : scale * std::exp(rate * t);
  }
};

struct GainConfig {
  Eigen::VectorXd k;        // n stage gains; k[n-1] multiplies the applied input
  Eigen::MatrixXd Gamma;    // q x q adaptation gain, symmetric positive definite
  double gamma_delta = 0.0;  // radius-estimator gain, >= 0
  double gamma_rho = 0.0;    // input-gain-estimator gain, > 0
  EpsilonSchedule epsilon;
  double T = 0.0;  // horizon in seconds when prescribed-time
};

/// The three estimator states: theta_hat tracks the congealed parameter
/// center, delta_hat the perturbation radius, rho_hat the reciprocal input
/// gain.
struct AdaptiveState {
  Eigen::VectorXd theta_hat;
  double delta_hat = 0.0;
  double rho_hat = 1.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
  std::string summary() const;
};

/// Stage gains must satisfy k_i > n - i + 1 for i < n and
/// k_n > 1 / (b_lower * rho_hat(0)); Gamma must be symmetric positive
/// definite, gamma_rho > 0, gamma_delta >= 0 and epsilon > 0.
ValidationReport validate_gains(const GainConfig& config, const StrictFeedbackModel& model,
                                double rho0);

struct ControlOutput {
  double u = 0.0;      // applied input, rho_hat * u_bar
  double u_bar = 0.0;  // -K * z_n (or -K * s_n for the filter-variable law)
  double K = 0.0;      // lumped feedback gain, always > 0
  double Psi = 0.0;    // lumped nonlinearity cancelled by the last bracket term
  double s_or_zn = 0.0;
  Eigen::VectorXd z;                // error coordinates (empty for the filter law)
  Eigen::VectorXd alpha;            // virtual controls alpha_1..alpha_{n-1}
  std::vector<Eigen::VectorXd> w;   // stage regressors w_1..w_n
  Eigen::VectorXd theta_hat_rate;
  double delta_hat_rate = 0.0;
  double rho_hat_rate = 0.0;
  /// d(alpha_i)/d(seed) for every stage, seeds ordered
  /// [x_1..x_n, theta_hat_1..q, delta_hat, mu^(0)..mu^(n-2)].
  std::vector<Eigen::VectorXd> alpha_partials;
};

inline int seed_count(int n, int q) { return 2 * n + q; }

/// Full recursive state-feedback law with the three adaptation rates.
/// Partial derivatives of the virtual controls are propagated as jets over
/// the seed set above, so every stage uses exact derivatives of the previous
/// one. Pure function of its arguments.
ControlOutput control_law(const StrictFeedbackModel& model, const GainConfig& config,
                          const Eigen::VectorXd& x, const AdaptiveState& a, double t,
                          const TimeScale& ts);

/// Same law with the gain derivatives mu^(0)..mu^(n-1) and the robustness
/// value supplied directly; used by the simulator and by derivative checks.
ControlOutput control_law_at(const StrictFeedbackModel& model, const GainConfig& config,
                             const Eigen::VectorXd& x, const AdaptiveState& a,
                             const std::vector<double>& mu_values, double epsilon);

/// Splits a sampled parameter value against the congealed center:
/// returns (theta_t - ell_theta, ell_theta - theta_hat), so that
/// theta_t = theta_hat + residual + perturbation holds exactly.
std::pair<Eigen::VectorXd, Eigen::VectorXd> congelation_decompose(
    const Eigen::VectorXd& theta_t, const AdaptiveState& a, const Eigen::VectorXd& ell_theta);

}  // namespace ptctl
