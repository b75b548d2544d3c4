#include "ptctl/normalform.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptctl {

ValidationReport validate_filter_gains(const Eigen::VectorXd& k_filter, int n) {
  ValidationReport report;
  if (k_filter.size() != n - 1) {
    report.violations.push_back("expected " + std::to_string(n - 1) + " filter gains");
    return report;
  }
  for (int i = 1; i <= n - 1; ++i) {
    if (!(k_filter[i - 1] > n - i + 1)) {
      std::ostringstream os;
      os << "filter gain k_" << i << " = " << k_filter[i - 1] << " must exceed " << n - i + 1;
      report.violations.push_back(os.str());
    }
  }
  return report;
}

FilterCoefficients filter_coefficients(const Eigen::VectorXd& k_filter, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  const ValidationReport report = validate_filter_gains(k_filter, n);
  if (!report.passed()) throw std::invalid_argument(report.summary());

  // c_{i,j} = (k_{i-1} + i - 1 - j) c_{i-1,j} + c_{i-1,j-1}, c_{1,1} = 1
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c[0] = 1.0;
  for (int i = 2; i <= n; ++i) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    for (int j = 1; j <= i; ++j) {
      const double carry = (j >= 2) ? c[j - 2] : 0.0;
      next[j - 1] = (k_filter[i - 2] + i - 1 - j) * c[j - 1] + carry;
    }
    c = next;
  }

  FilterCoefficients fc;
  fc.n = n;
  fc.c = c;
  fc.l.resize(n);
  for (int j = 1; j <= n; ++j)
    fc.l[j - 1] = (n - j) * c[j - 1] + ((j >= 2) ? c[j - 2] : 0.0);
  return fc;
}

double filter_value(const FilterCoefficients& fc, double mu, const Eigen::VectorXd& x) {
  if (!(mu > 0)) throw std::domain_error("filter gain must be positive");
  double s = 0.0;
  for (int j = 1; j <= fc.n; ++j) s += fc.c[j - 1] * std::pow(mu, fc.n - j) * x[j - 1];
  return s;
}

double psi_value(const FilterCoefficients& fc, double mu, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& theta_hat, const Eigen::VectorXd& phi_n) {
  if (!(mu > 0)) throw std::domain_error("filter gain must be positive");
  double psi = phi_n.dot(theta_hat);
  for (int i = 1; i <= fc.n; ++i) psi += fc.l[i - 1] * std::pow(mu, fc.n - i + 1) * x[i - 1];
  return psi;
}

ControlOutput control_law_nf(const StrictFeedbackModel& model, const GainConfig& config,
                             const Eigen::VectorXd& x, const AdaptiveState& a, double t,
                             const TimeScale& ts) {
  const int n = model.n;
  if (!model.normal_form)
    throw std::invalid_argument("filter-variable law requires a normal-form plant");
  if (x.size() != n) throw std::invalid_argument("state dimension mismatch");
  if (a.theta_hat.size() != model.q)
    throw std::invalid_argument("theta_hat dimension mismatch");

  const double g = ts.mu(t);
  const double eps = config.epsilon(t);
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");

  const FilterCoefficients fc =
      filter_coefficients(config.k.head(n - 1), n);
  const double s = filter_value(fc, g, x);
  const Eigen::VectorXd phi_n = model.phi_values(n - 1, x);
  const double psi = psi_value(fc, g, x, a.theta_hat, phi_n);
  const double ptp = phi_n.squaredNorm();
  const double S = std::sqrt(s * s * ptp + eps * eps);
  const double k_stage = config.k[n - 1];

  ControlOutput out;
  out.Psi = psi;
  out.s_or_zn = s;
  out.K = k_stage * g + a.delta_hat * ptp / S +
          psi * psi / std::sqrt(s * s * psi * psi + eps * eps);
  out.u_bar = -(out.K * s);
  out.u = a.rho_hat * out.u_bar;
  out.w.push_back(phi_n);
  out.theta_hat_rate = config.Gamma * (phi_n * s);
  out.delta_hat_rate = config.gamma_delta * s * s * ptp / S;
  out.rho_hat_rate = -config.gamma_rho * model.control_sign * s * out.u_bar;
  return out;
}

}  // namespace ptctl
