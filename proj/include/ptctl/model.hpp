#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptctl/jet.hpp"

namespace ptctl {

/// sign with sgn(0) = 0
inline double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

/// Ground-truth congelation data, used only to reconstruct Lyapunov
/// quantities in verification; never consumed by the controllers.
struct GroundTruth {
  Eigen::VectorXd ell_theta;  // congealed center of theta(t)
  double delta_theta = 0.0;   // bound on ||theta(t) - ell_theta||
  double ell_b = 0.0;         // signed infimum-magnitude value of b(t)
};

/// Regressor map phi_i: takes the first i states (as jets so controllers can
/// differentiate through it) and returns q components.
using RegressorFn = std::function<std::vector<Jet>(const std::vector<Jet>&)>;

/// Plant in strict-feedback form:
///   dx_i = phi_i(x_1..x_i)^T theta(t) + x_{i+1},   i < n
///   dx_n = phi_n(x)^T theta(t) + b(t) u
/// theta_true/b_true are simulation ground truth; controllers only see the
/// regressors, the sign of b and the known lower bound b_lower.
struct StrictFeedbackModel {
  std::string name;
  int n = 0;
  int q = 0;
  std::vector<RegressorFn> phi;  // phi[i] is phi_{i+1}
  // theta may be threaded with the state (the benchmark's destabilizing
  // signal depends on x); it is sampled along trajectories like any other
  // time-varying signal.
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> theta_true;
  std::function<double(double)> b_true;
  double b_lower = 0.0;
  int control_sign = +1;
  bool normal_form = false;  // phi_i == 0 for all i < n
  std::optional<GroundTruth> truth;

  /// phi_{i+1} evaluated at plain values (x uses the first i+1 entries).
  Eigen::VectorXd phi_values(int i, const Eigen::VectorXd& x) const;
  /// phi_{i+1} on jets sharing the given shape; x_seeds holds all n states.
  std::vector<Jet> phi_jets(int i, const std::vector<Jet>& x_seeds) const;
};

Eigen::VectorXd plant_rhs(const StrictFeedbackModel& model, const Eigen::VectorXd& x, double u,
                          double t);

StrictFeedbackModel builtin_benchmark();
StrictFeedbackModel builtin_wing_rock();
/// "benchmark" or "wing_rock"; throws std::invalid_argument otherwise.
StrictFeedbackModel model_by_name(const std::string& name);

struct ModelCheckReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// Samples the declared assumptions on a time grid: phi_i(0) = 0,
/// b_lower <= |b(t)|, sgn(b(t)) = control_sign, and (when ground truth is
/// present) sgn(ell_b) * (b(t) - ell_b) >= 0 and
/// ||theta(t,0) - ell_theta|| <= delta_theta.
ModelCheckReport check_model_assumptions(const StrictFeedbackModel& model, double t_max,
                                         int samples);

}  // namespace ptctl
