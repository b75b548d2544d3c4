#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptctl/backstepping.hpp"
#include "ptctl/model.hpp"
#include "ptctl/timescale.hpp"

namespace ptctl {

enum class ControllerKind {
  Recursive,
  FilterPrescribedTime,
  FilterExponential,
  FilterSuperExponential,
  FilterAsymptotic,
};

struct IntegrationOptions {
  enum class Domain { T, Tau } domain = Domain::T;
  /// Base step: seconds in the t domain, stretched-axis units in the tau
  /// domain.
  double h = 1e-4;
  /// Effective t-domain step is min(h, singular_step_factor / mu(t)), so the
  /// grid refines as the gain grows.
  double singular_step_factor = 1e-2;
  /// Stop margin eta before the prescribed horizon; <= 0 selects the default
  /// 1e-3 * T.
  double stop_margin = 0.0;
};

/// Verification-only hooks; not loadable from scenario files.
struct DebugMutations {
  bool flip_rho_adaptation_sign = false;
};

struct Scenario {
  std::string name;
  StrictFeedbackModel model;
  ControllerKind controller = ControllerKind::Recursive;
  GainConfig gains;
  TimeScale timescale = TimeScale::asymptotic();
  Eigen::VectorXd x0;
  AdaptiveState a0;
  IntegrationOptions integration;
  double t_end = 0.0;
  /// Keep integrating past the stop margin with the input forced to zero
  /// (open loop, estimators frozen).
  bool non_stop = false;
  std::string csv_path;
  std::string plot_path;
  DebugMutations debug;

  double stop_margin() const;  // resolved eta
  /// Time at which the input switches off in non-stop mode (T - eta);
  /// +inf when not applicable.
  double switch_time() const;
};

struct Trajectory {
  int n = 0;
  int q = 0;
  bool filter_controller = false;  // s_n recorded instead of z
  std::vector<double> t;
  std::vector<double> tau;  // stretched-axis time (frozen past the input switch)
  Eigen::MatrixXd x;        // rows x n
  std::vector<double> u, u_bar, delta_hat, rho_hat, K, s_or_zn;
  Eigen::MatrixXd theta_hat;  // rows x q
  Eigen::MatrixXd z;          // rows x n for the recursive law; rows x 1 otherwise
  double switch_time = std::numeric_limits<double>::infinity();
  std::size_t rows() const { return t.size(); }
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ValidationReport validate_scenario(const Scenario& scenario);

/// Classic fixed-stage 4th-order integration of the closed loop
/// (plant + controller + estimators). Throws SimulationError on state
/// blow-up (any component above 1e12) and std::invalid_argument when the
/// scenario fails validation.
Trajectory integrate(const Scenario& scenario);

struct Metrics {
  /// Last time |x_i| exceeds the band; 0 when it never does, +inf when the
  /// final sample still exceeds it ("not settled").
  std::vector<double> band_entry_time;
  std::vector<bool> settled;
  double peak_u = 0.0;
  Eigen::VectorXd terminal_theta_hat;
  double terminal_delta_hat = 0.0;
  double terminal_rho_hat = 0.0;
  double terminal_state_norm = 0.0;
};

Metrics compute_metrics(const Trajectory& traj, double band);

}  // namespace ptctl
