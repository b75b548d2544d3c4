#include "ptctl/timescale.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ptctl {

TimeScale TimeScale::asymptotic() { return TimeScale(TimeScaleKind::Asymptotic, 0, 0, 0); }

TimeScale TimeScale::prescribed_time(double T) {
  if (!(T > 0)) throw std::invalid_argument("prescribed-time horizon must be positive");
  return TimeScale(TimeScaleKind::PrescribedTime, T, 0, 0);
}

TimeScale TimeScale::exponential(double lambda1) {
  if (!(lambda1 > 0)) throw std::invalid_argument("exponential rate must be positive");
  return TimeScale(TimeScaleKind::Exponential, 0, lambda1, 0);
}

TimeScale TimeScale::super_exponential(double lambda1, double lambda2) {
  if (!(lambda1 > 0)) throw std::invalid_argument("super-exponential rate must be positive");
  if (!(lambda2 > 0 && lambda2 <= 1.0))
    throw std::invalid_argument("super-exponential envelope constant must lie in (0, 1]");
  return TimeScale(TimeScaleKind::SuperExponential, 0, lambda1, lambda2);
}

double TimeScale::horizon() const {
  if (kind_ != TimeScaleKind::PrescribedTime)
    throw std::logic_error("horizon defined for the prescribed-time kind only");
  return horizon_;
}

void TimeScale::check_time(double t) const {
  if (!(t >= 0)) throw std::domain_error("time must be nonnegative");
  if (kind_ == TimeScaleKind::PrescribedTime && !(t < horizon_))
    throw std::domain_error("time must lie strictly below the prescribed horizon");
}

double TimeScale::mu(double t) const {
  check_time(t);
  switch (kind_) {
    case TimeScaleKind::Asymptotic:
      return 1.0;
    case TimeScaleKind::PrescribedTime:
      return 1.0 / (horizon_ - t);
    case TimeScaleKind::Exponential:
      return std::exp(lambda1_ * t);
    case TimeScaleKind::SuperExponential:
      return std::exp(std::exp(lambda1_ * t));
  }
  return 0;
}

double TimeScale::mu_deriv(double t, int order) const {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (order == 0) return mu(t);
  check_time(t);
  switch (kind_) {
    case TimeScaleKind::Asymptotic:
      return 0.0;
    case TimeScaleKind::PrescribedTime: {
      // mu^(j) = j! mu^{j+1}, from d(mu)/dt = mu^2
      const double m = 1.0 / (horizon_ - t);
      double out = m;
      for (int j = 1; j <= order; ++j) out *= j * m;
      return out;
    }
    case TimeScaleKind::Exponential: {
      return std::pow(lambda1_, order) * std::exp(lambda1_ * t);
    }
    case TimeScaleKind::SuperExponential: {
      // Taylor recurrence for u = exp(g), g = exp(lambda1 t):
      // u_m = (1/m) sum_{j=1..m} j g_j u_{m-j}, with g_j = g lambda1^j / j!.
      const double g = std::exp(lambda1_ * t);
      std::vector<double> gc(order + 1), uc(order + 1);
      double fact = 1.0;
      for (int j = 0; j <= order; ++j) {
        if (j > 0) fact *= j;
        gc[j] = g * std::pow(lambda1_, j) / fact;
      }
      uc[0] = std::exp(g);
      for (int m = 1; m <= order; ++m) {
        double acc = 0;
        for (int j = 1; j <= m; ++j) acc += j * gc[j] * uc[m - j];
        uc[m] = acc / m;
      }
      double fac = 1.0;
      for (int j = 2; j <= order; ++j) fac *= j;
      return fac * uc[order];
    }
  }
  return 0;
}

double TimeScale::t_to_tau(double t) const {
  if (kind_ != TimeScaleKind::PrescribedTime)
    throw std::domain_error("axis mapping defined for the prescribed-time kind only");
  check_time(t);
  return -std::log1p(-t / horizon_);
}

double TimeScale::tau_to_t(double tau) const {
  if (kind_ != TimeScaleKind::PrescribedTime)
    throw std::domain_error("axis mapping defined for the prescribed-time kind only");
  if (!(tau >= 0)) throw std::domain_error("stretched time must be nonnegative");
  return -horizon_ * std::expm1(-tau);
}

double TimeScale::beta(double tau) const {
  if (kind_ != TimeScaleKind::PrescribedTime)
    throw std::domain_error("beta defined for the prescribed-time kind only");
  if (!(tau >= 0)) throw std::domain_error("stretched time must be nonnegative");
  return std::exp(tau) / horizon_;
}

std::pair<double, double> TimeScale::gain_envelope(double t, double lambda_upper) const {
  const double m = mu(t);
  switch (kind_) {
    case TimeScaleKind::Exponential:
      return {std::exp(lambda1_ * t), std::exp(lambda_upper * t)};
    case TimeScaleKind::SuperExponential:
      return {std::exp(lambda2_ * std::exp(lambda1_ * t)),
              std::numeric_limits<double>::infinity()};
    default:
      return {m, m};
  }
}

}  // namespace ptctl
