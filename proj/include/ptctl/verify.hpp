#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptctl/backstepping.hpp"
#include "ptctl/model.hpp"
#include "ptctl/normalform.hpp"
#include "ptctl/sim.hpp"

namespace ptctl {

/// One executable check. worst_margin >= 0 iff the check passed: it is the
/// smallest slack observed over all evaluation points (tolerance minus error,
/// bound minus value, and so on, depending on the check).
struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_margin = 0.0;
  std::string detail;
};

/// |s| - s^2 / sqrt(s^2 + sigma^2) < sigma over random (s, sigma), sigma > 0.
CheckResult check_saturation_inequality(int samples, std::uint64_t seed);

/// kappa z^2 + Psi z <= eps with kappa = -Psi^2 / sqrt(z^2 Psi^2 + eps^2),
/// over random (z, Psi, eps).
CheckResult check_input_bracket_bound(int samples, std::uint64_t seed);

/// Scalar comparison system dz/dtau = -K(tau) z + Y(z, tau) / gamma^sigma.
/// The finite-horizon surrogate of the vanishing-weighted-state conclusion:
/// |z gamma^sigma| must decrease monotonically (small slack) and fall below
/// 1e-6 of its initial magnitude by tau_max.
struct ScalarComparisonInstance {
  std::string name;
  std::function<double(double)> K;
  std::function<double(double)> gamma;
  double sigma = 1.0;
  double z0 = 1.0;
  std::function<double(double, double)> Y;  // (z, tau)
};

CheckResult check_comparison_decay(const ScalarComparisonInstance& instance, double tau_max = 30.0,
                         double h = 1e-3);

/// The three stock instances: constant gain with the exponential weight and
/// no perturbation; constant gain with the polynomial weight and a linear
/// perturbation; minimal constant gain with a bounded oscillatory
/// perturbation.
std::vector<ScalarComparisonInstance> scalar_comparison_instances();

/// Integrates the filter cascade ds_{i-1}/dt = -k_{i-1}/(T-t) s_{i-1} + s_i
/// downward from an injected terminal signal (identically zero, then
/// (T-t)^p) and requires every s_i(T - eta) to shrink as eta does.
CheckResult check_filter_cascade(const FilterCoefficients& fc, double T,
                                 const Eigen::VectorXd& k_filter, const Eigen::VectorXd& s_init);

/// Reconstructs the composite Lyapunov function along a recorded closed-loop
/// trajectory from the ground-truth congealed parameters, differentiates it
/// on the stretched-time grid, and checks the decrement bound
///   dV/dtau <= -sum k_i z_i^2 + (n delta_theta + 1) eps / beta
/// within a tolerance dominated by the differentiation error.
CheckResult check_lyapunov_decrement(const Trajectory& traj, const GroundTruth& truth,
                                     const GainConfig& config, const StrictFeedbackModel& model);

/// Lyapunov components along the trajectory: columns V_z, V_theta, V_rho,
/// V_delta.
Eigen::MatrixXd lyapunov_components(const Trajectory& traj, const GroundTruth& truth,
                                    const GainConfig& config);

/// Jet partials of every virtual control against central finite differences
/// at random evaluation points; relative error below 1e-6.
CheckResult check_gradients(const StrictFeedbackModel& model, const GainConfig& config,
                            int samples, std::uint64_t seed);

/// rho_hat and delta_hat must be nondecreasing along a recorded closed-loop
/// trajectory (positive control direction).
CheckResult check_estimator_monotonicity(const Trajectory& traj);

/// All checks, optionally filtered by exact name. Deterministic given the
/// seed.
std::vector<CheckResult> run_check_suite(const std::string& only, std::uint64_t seed);
std::vector<std::string> check_suite_names();

}  // namespace ptctl
