#pragma once

#include <utility>

namespace ptctl {

enum class TimeScaleKind { Asymptotic, PrescribedTime, Exponential, SuperExponential };

/// Time-varying feedback gain family together with the temporal axis mapping
/// it induces. The prescribed-time kind carries the singular gain
/// mu(t) = 1/(T - t) on [0, T) and the bijection t = T(1 - e^{-tau}) onto
/// [0, inf); the exponential and super-exponential kinds carry the gains
/// a'(t) = e^{lambda1 t} and a'(t) = exp(exp(lambda1 t)); the asymptotic kind
/// is the constant gain 1.
///
/// Immutable after construction; safe to share across threads.
class TimeScale {
 public:
  static TimeScale asymptotic();
  static TimeScale prescribed_time(double T);
  static TimeScale exponential(double lambda1);
  /// lambda2 in (0, 1] is the declared envelope constant in
  /// exp(lambda2 * exp(lambda1 t)) <= a'(t); the built-in gain attains it at
  /// lambda2 = 1.
  static TimeScale super_exponential(double lambda1, double lambda2);

  TimeScaleKind kind() const { return kind_; }
  bool finite_horizon() const { return kind_ == TimeScaleKind::PrescribedTime; }
  double horizon() const;  // prescribed-time only
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }

  /// Gain value at time t. Domain error for t < 0 and, in prescribed-time
  /// mode, for t >= T (strict; callers own their stop margin).
  double mu(double t) const;

  /// d^order mu / dt^order. The prescribed-time gain uses the closed form
  /// order! * mu^{order+1}; the other kinds use their analytic derivatives.
  double mu_deriv(double t, int order) const;

  /// Axis mapping tau = ln T - ln(T - t) and its inverse t = T(1 - e^{-tau}).
  /// Prescribed-time only; unsupported-kind error otherwise.
  double t_to_tau(double t) const;
  double tau_to_t(double tau) const;

  /// Gain expressed on the stretched axis: beta(tau) = e^tau / T, so that
  /// beta(t_to_tau(t)) = mu(t). Prescribed-time only.
  double beta(double tau) const;

  /// Admissible envelope for the gain at time t per the exponential /
  /// super-exponential family definitions: first <= mu(t) <= second. The
  /// upper bound uses the supplied exponent for the exponential kind and is
  /// +inf for the super-exponential kind; for the other kinds both bounds
  /// equal mu(t).
  std::pair<double, double> gain_envelope(double t, double lambda_upper) const;

 private:
  TimeScale(TimeScaleKind kind, double T, double l1, double l2)
      : kind_(kind), horizon_(T), lambda1_(l1), lambda2_(l2) {}

  void check_time(double t) const;

  TimeScaleKind kind_;
  double horizon_;
  double lambda1_;
  double lambda2_;
};

}  // namespace ptctl
