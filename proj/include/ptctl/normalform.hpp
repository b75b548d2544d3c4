#pragma once

#include <Eigen/Dense>

#include "ptctl/backstepping.hpp"
#include "ptctl/model.hpp"
#include "ptctl/timescale.hpp"

namespace ptctl {

/// Coefficients of the filter variable s_n = sum_j c_j mu^{n-j} x_j and of
/// its drift decomposition ds_n/dt = b u + phi_n^T theta + sum_i l_i
/// mu^{n-i+1} x_i, generated by the cascade s_i = k_{i-1} mu s_{i-1} +
/// ds_{i-1}/dt with mu = 1/(T-t).
struct FilterCoefficients {
  int n = 1;
  Eigen::VectorXd c;  // c_1..c_n, c_n == 1
  Eigen::VectorXd l;  // l_1..l_n
};

ValidationReport validate_filter_gains(const Eigen::VectorXd& k_filter, int n);

/// k_filter holds the n-1 cascade gains; each must exceed n-i+1.
FilterCoefficients filter_coefficients(const Eigen::VectorXd& k_filter, int n);

double filter_value(const FilterCoefficients& fc, double mu, const Eigen::VectorXd& x);

/// psi = sum_i l_i mu^{n-i+1} x_i + phi_n^T theta_hat.
double psi_value(const FilterCoefficients& fc, double mu, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& theta_hat, const Eigen::VectorXd& phi_n);

/// Single filter-variable law for plants with phi_i == 0 below the last
/// equation. The same structure serves the prescribed-time, exponential,
/// super-exponential and constant-gain cases: the stage gain and the filter
/// powers use mu(t) from the supplied TimeScale, whatever its kind.
/// config.k packs the n-1 filter gains followed by the scalar stage gain.
ControlOutput control_law_nf(const StrictFeedbackModel& model, const GainConfig& config,
                             const Eigen::VectorXd& x, const AdaptiveState& a, double t,
                             const TimeScale& ts);

}  // namespace ptctl
