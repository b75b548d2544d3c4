#include "ptctl/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ptctl {

Eigen::VectorXd StrictFeedbackModel::phi_values(int i, const Eigen::VectorXd& x) const {
  std::vector<Jet> xs(n);
  for (int j = 0; j < n; ++j) xs[j] = Jet::constant(x[j], 0, 0);
  const std::vector<Jet> out = phi_jets(i, xs);
  Eigen::VectorXd v(q);
  for (int r = 0; r < q; ++r) v[r] = out[r].value();
  return v;
}

std::vector<Jet> StrictFeedbackModel::phi_jets(int i, const std::vector<Jet>& x_seeds) const {
  std::vector<Jet> head(x_seeds.begin(), x_seeds.begin() + (i + 1));
  std::vector<Jet> out = phi[i](head);
  if (static_cast<int>(out.size()) != q)
    throw std::logic_error("regressor returned wrong parameter dimension");
  return out;
}

Eigen::VectorXd plant_rhs(const StrictFeedbackModel& model, const Eigen::VectorXd& x, double u,
                          double t) {
  const Eigen::VectorXd theta = model.theta_true(t, x);
  Eigen::VectorXd dx(model.n);
  for (int i = 0; i < model.n; ++i) {
    const double drift = model.phi_values(i, x).dot(theta);
    dx[i] = drift + (i + 1 < model.n ? x[i + 1] : model.b_true(t) * u);
  }
  return dx;
}

StrictFeedbackModel builtin_benchmark() {
  StrictFeedbackModel m;
  m.name = "benchmark";
  m.n = 3;
  m.q = 1;
  m.phi.resize(3);
  m.phi[0] = [](const std::vector<Jet>& x) { return std::vector<Jet>{x[0]}; };
  auto zero_phi = [](const std::vector<Jet>& x) {
    return std::vector<Jet>{0.0 * x[0]};
  };
  m.phi[1] = zero_phi;
  m.phi[2] = zero_phi;
  m.theta_true = [](double t, const Eigen::VectorXd& x) {
    Eigen::VectorXd th(1);
    th[0] = 1.0 + 0.6 * std::cos(40.0 * x[0] * t) + 0.2 * std::sin(x[2] * x[2] * t) +
            0.2 * sgn(std::sin(20.0 * t));
    return th;
  };
  m.b_true = [](double t) { return 1.4 + 0.2 * std::cos(10.0 * t); };
  m.b_lower = 1.2;
  m.control_sign = +1;
  m.normal_form = false;
  GroundTruth truth;
  truth.ell_theta = Eigen::VectorXd::Constant(1, 1.0);
  truth.delta_theta = 1.0;
  truth.ell_b = 1.2;
  m.truth = truth;
  return m;
}

StrictFeedbackModel builtin_wing_rock() {
  constexpr double kTheta1 = -26.6667;
  constexpr double kTheta2 = 0.67485;
  StrictFeedbackModel m;
  m.name = "wing_rock";
  m.n = 2;
  m.q = 2;
  m.phi.resize(2);
  m.phi[0] = [](const std::vector<Jet>& x) {
    const Jet zero = 0.0 * x[0];
    return std::vector<Jet>{zero, zero};
  };
  m.phi[1] = [](const std::vector<Jet>& x) { return std::vector<Jet>{x[0], x[1]}; };
  m.theta_true = [](double t, const Eigen::VectorXd&) {
    const double sw = sgn(std::sin(3.0 * t));
    Eigen::VectorXd th(2);
    th[0] = kTheta1 * (1.0 + 0.2 * sw);
    th[1] = kTheta2 * (1.0 + 0.2 * sw);
    return th;
  };
  m.b_true = [](double t) { return 2.0 + 0.2 * sgn(std::sin(3.0 * t)) * std::cos(t); };
  m.b_lower = 1.8;
  m.control_sign = +1;
  m.normal_form = true;
  GroundTruth truth;
  truth.ell_theta = Eigen::VectorXd(2);
  truth.ell_theta << kTheta1, kTheta2;
  truth.delta_theta = 0.2 * std::sqrt(kTheta1 * kTheta1 + kTheta2 * kTheta2);
  truth.ell_b = 1.8;
  m.truth = truth;
  return m;
}

StrictFeedbackModel model_by_name(const std::string& name) {
  if (name == "benchmark") return builtin_benchmark();
  if (name == "wing_rock") return builtin_wing_rock();
  throw std::invalid_argument("unknown model: " + name);
}

ModelCheckReport check_model_assumptions(const StrictFeedbackModel& model, double t_max,
                                         int samples) {
  ModelCheckReport report;
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(model.n);
  for (int i = 0; i < model.n; ++i) {
    if (model.phi_values(i, origin).norm() != 0.0)
      report.violations.push_back("phi_" + std::to_string(i + 1) + " does not vanish at 0");
  }
  for (int s = 0; s <= samples; ++s) {
    const double t = t_max * s / samples;
    const double b = model.b_true(t);
    if (!(model.b_lower <= std::abs(b)))
      report.violations.push_back("b lower bound violated at t=" + std::to_string(t));
    if (sgn(b) != model.control_sign)
      report.violations.push_back("control direction flips at t=" + std::to_string(t));
    if (model.truth) {
      const GroundTruth& tr = *model.truth;
      if (sgn(tr.ell_b) * (b - tr.ell_b) < 0)
        report.violations.push_back("input-gain perturbation changes sign at t=" +
                                    std::to_string(t));
      const Eigen::VectorXd th = model.theta_true(t, origin);
      if ((th - tr.ell_theta).norm() > tr.delta_theta * (1 + 1e-12))
        report.violations.push_back("parameter radius exceeded at t=" + std::to_string(t));
    }
  }
  return report;
}

}  // namespace ptctl
