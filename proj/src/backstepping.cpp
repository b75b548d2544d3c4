#include "ptctl/backstepping.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptctl {

std::string ValidationReport::summary() const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate_gains(const GainConfig& config, const StrictFeedbackModel& model,
                                double rho0) {
  ValidationReport report;
  const int n = model.n;
  if (config.k.size() != n) {
    report.violations.push_back("expected " + std::to_string(n) + " stage gains, got " +
                                std::to_string(config.k.size()));
    return report;
  }
  for (int i = 1; i <= n - 1; ++i) {
    const double bound = n - i + 1;
    if (!(config.k[i - 1] > bound)) {
      std::ostringstream os;
      os << "k_" << i << " = " << config.k[i - 1] << " must exceed " << bound;
      report.violations.push_back(os.str());
    }
  }
  if (!(rho0 * model.control_sign > 0))
    report.violations.push_back("rho_hat(0) must share the control direction sign");
  const double kn_bound = 1.0 / (model.b_lower * std::abs(rho0));
  if (!(config.k[n - 1] > kn_bound)) {
    std::ostringstream os;
    os << "k_" << n << " = " << config.k[n - 1] << " must exceed 1/(b_lower rho_hat(0)) = "
       << kn_bound;
    report.violations.push_back(os.str());
  }
  if (config.Gamma.rows() != model.q || config.Gamma.cols() != model.q) {
    report.violations.push_back("Gamma must be q x q");
  } else {
    if (!config.Gamma.isApprox(config.Gamma.transpose(), 1e-12))
      report.violations.push_back("Gamma must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(config.Gamma);
    if (llt.info() != Eigen::Success)
      report.violations.push_back("Gamma must be positive definite");
  }
  if (!(config.gamma_rho > 0)) report.violations.push_back("gamma_rho must be positive");
  if (!(config.gamma_delta >= 0)) report.violations.push_back("gamma_delta must be nonnegative");
  if (!(config.epsilon.scale > 0))
    report.violations.push_back("epsilon must be positive pointwise");
  return report;
}

namespace {

struct EvalContext {
  const StrictFeedbackModel* model;
  const GainConfig* config;
  const Eigen::VectorXd* x;
  const Eigen::VectorXd* theta_hat;
  double delta_hat;
  const std::vector<double>* mu;  // values of mu^(0)..mu^(n-1)
  double eps;
  int m;
};

int x_index(int j) { return j; }
int theta_index(int n, int r) { return n + r; }
int delta_index(int n, int q) { return n + q; }
int mu_index(int n, int q, int j) { return n + q + 1 + j; }

std::vector<Jet> make_x_seeds(const EvalContext& c, int depth) {
  std::vector<Jet> xs(c.model->n);
  for (int j = 0; j < c.model->n; ++j)
    xs[j] = Jet::seed((*c.x)[j], c.m, depth, x_index(j));
  return xs;
}

std::vector<Jet> make_theta_seeds(const EvalContext& c, int depth) {
  std::vector<Jet> th(c.model->q);
  for (int r = 0; r < c.model->q; ++r)
    th[r] = Jet::seed((*c.theta_hat)[r], c.m, depth, theta_index(c.model->n, r));
  return th;
}

Jet dot(const std::vector<Jet>& a, const std::vector<Jet>& b) {
  Jet acc = 0.0 * a[0];
  for (std::size_t r = 0; r < a.size(); ++r) acc += a[r] * b[r];
  return acc;
}

/// grad^T Gamma vec for a q-gradient and q-vector of jets.
Jet bilinear(const std::vector<Jet>& grad, const Eigen::MatrixXd& G, const std::vector<Jet>& vec) {
  Jet acc = 0.0 * grad[0];
  for (int r = 0; r < G.rows(); ++r)
    for (int col = 0; col < G.cols(); ++col) acc += grad[r] * (G(r, col) * vec[col]);
  return acc;
}

/// Everything the recursion has produced through one stage, all jets sharing
/// one depth. dalpha[p] holds the seed-partials of alpha_{p+1}; the current
/// stage's own partials are extracted by the caller one level lower.
struct Chain {
  std::vector<Jet> z;
  std::vector<Jet> tau_theta;  // q entries
  Jet tau_delta;
  Jet alpha;
  std::vector<std::vector<Jet>> dalpha;
  std::vector<double> alpha_values;
  std::vector<Eigen::VectorXd> w_values;
};

Eigen::VectorXd jet_values(const std::vector<Jet>& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}

Chain eval_chain(const EvalContext& c, int stage, int depth) {
  const int n = c.model->n;
  const int q = c.model->q;
  const Eigen::VectorXd& k = c.config->k;
  const double gd = c.config->gamma_delta;

  Chain cur;
  std::vector<Jet> xs = make_x_seeds(c, depth);
  std::vector<Jet> th = make_theta_seeds(c, depth);
  Jet dh = Jet::seed(c.delta_hat, c.m, depth, delta_index(n, q));
  Jet mu0 = Jet::seed((*c.mu)[0], c.m, depth, mu_index(n, q, 0));

  if (stage == 1) {
    Jet z1 = xs[0];
    std::vector<Jet> w1 = c.model->phi_jets(0, xs);
    Jet wtw = dot(w1, w1);
    Jet S = sqrt(z1 * z1 * wtw + c.eps * c.eps);
    Jet sat = z1 * wtw / S;
    cur.alpha = -(k[0] * (mu0 * z1)) - dot(w1, th) - dh * sat;
    cur.z.push_back(z1);
    cur.tau_theta.reserve(q);
    for (int r = 0; r < q; ++r) cur.tau_theta.push_back(w1[r] * z1);
    cur.tau_delta = z1 * sat;
    cur.alpha_values.push_back(cur.alpha.value());
    cur.w_values.push_back(jet_values(w1));
    return cur;
  }

  Chain prev = eval_chain(c, stage - 1, depth + 1);

  // Project the accumulated quantities down one derivative level and pick up
  // the previous stage's partials at the current level.
  for (const Jet& zj : prev.z) cur.z.push_back(zj.lower());
  for (const Jet& tr : prev.tau_theta) cur.tau_theta.push_back(tr.lower());
  cur.tau_delta = prev.tau_delta.lower();
  for (const auto& list : prev.dalpha) {
    std::vector<Jet> lowered;
    lowered.reserve(list.size());
    for (const Jet& g : list) lowered.push_back(g.lower());
    cur.dalpha.push_back(std::move(lowered));
  }
  {
    std::vector<Jet> da;
    da.reserve(c.m);
    for (int kk = 0; kk < c.m; ++kk) da.push_back(prev.alpha.partial(kk));
    cur.dalpha.push_back(std::move(da));
  }
  cur.alpha_values = prev.alpha_values;
  cur.w_values = prev.w_values;

  const int i = stage;
  const std::vector<Jet>& da_prev = cur.dalpha.back();  // partials of alpha_{i-1}

  Jet z_i = xs[i - 1] - prev.alpha.lower();
  std::vector<Jet> phi_i = c.model->phi_jets(i - 1, xs);
  std::vector<Jet> w_i = phi_i;
  for (int j = 1; j <= i - 1; ++j) {
    std::vector<Jet> phi_j = c.model->phi_jets(j - 1, xs);
    for (int r = 0; r < q; ++r) w_i[r] -= da_prev[x_index(j - 1)] * phi_j[r];
  }
  Jet wtw = dot(w_i, w_i);
  Jet S = sqrt(z_i * z_i * wtw + c.eps * c.eps);
  Jet sat = z_i * wtw / S;

  cur.z.push_back(z_i);
  for (int r = 0; r < q; ++r) cur.tau_theta[r] += w_i[r] * z_i;
  cur.tau_delta += z_i * sat;

  Jet alpha = -(k[i - 1] * (mu0 * z_i)) - dot(w_i, th) - dh * sat;
  // radius-estimate transients of the earlier stages
  if (gd != 0.0) {
    Jet cross = 0.0 * z_i;
    for (int j = 2; j <= i - 1; ++j)
      cross += cur.dalpha[j - 2][delta_index(n, q)] * cur.z[j - 1];
    alpha += gd * (sat * cross);
    alpha += gd * (da_prev[delta_index(n, q)] * cur.tau_delta);
  }
  // drift compensation through the known part of the state equations
  for (int j = 1; j <= i - 1; ++j) alpha += da_prev[x_index(j - 1)] * xs[j];
  alpha -= cur.z[i - 2];
  // shared-estimator corrections
  std::vector<Jet> grad_theta(q);
  for (int j = 2; j <= i - 1; ++j) {
    for (int r = 0; r < q; ++r) grad_theta[r] = cur.dalpha[j - 2][theta_index(n, r)];
    alpha += bilinear(grad_theta, c.config->Gamma, w_i) * cur.z[j - 1];
  }
  for (int r = 0; r < q; ++r) grad_theta[r] = da_prev[theta_index(n, r)];
  alpha += bilinear(grad_theta, c.config->Gamma, cur.tau_theta);
  // time-varying-gain drift
  for (int j = 0; j <= i - 2; ++j) {
    Jet mu_next = Jet::seed((*c.mu)[j + 1], c.m, depth, mu_index(n, q, j + 1));
    alpha += da_prev[mu_index(n, q, j)] * mu_next;
  }

  cur.alpha = alpha;
  cur.alpha_values.push_back(alpha.value());
  cur.w_values.push_back(jet_values(w_i));
  return cur;
}

}  // namespace

ControlOutput control_law_at(const StrictFeedbackModel& model, const GainConfig& config,
                             const Eigen::VectorXd& x, const AdaptiveState& a,
                             const std::vector<double>& mu_values, double epsilon) {
  const int n = model.n;
  const int q = model.q;
  if (x.size() != n) throw std::invalid_argument("state dimension mismatch");
  if (a.theta_hat.size() != q) throw std::invalid_argument("theta_hat dimension mismatch");
  if (static_cast<int>(mu_values.size()) < n)
    throw std::invalid_argument("need gain derivatives up to order n-1");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");

  EvalContext ctx{&model, &config, &x, &a.theta_hat, a.delta_hat, &mu_values, epsilon,
                  seed_count(n, q)};

  ControlOutput out;
  out.z.resize(n);
  out.alpha.resize(n - 1);
  out.theta_hat_rate.resize(q);

  double z_n = 0.0;
  double z_nm1 = 0.0;
  Eigen::VectorXd w_n(q);
  Eigen::VectorXd tau_theta_n(q);
  double tau_delta_n = 0.0;
  double psi_theta = 0.0;
  double psi_delta = 0.0;
  double f_o = 0.0;

  if (n == 1) {
    z_n = x[0];
    w_n = model.phi_values(0, x);
    tau_theta_n = w_n * z_n;
    const double wtw = w_n.squaredNorm();
    const double S = std::sqrt(z_n * z_n * wtw + epsilon * epsilon);
    tau_delta_n = z_n * z_n * wtw / S;
    out.w.push_back(w_n);
    out.Psi = w_n.dot(a.theta_hat);
    out.K = config.k[0] * mu_values[0] + a.delta_hat * wtw / S +
            out.Psi * out.Psi / std::sqrt(z_n * z_n * out.Psi * out.Psi + epsilon * epsilon);
  } else {
    Chain top = eval_chain(ctx, n - 1, 1);

    // values and first partials of every virtual control
    std::vector<Eigen::VectorXd> dalpha(n - 1, Eigen::VectorXd(ctx.m));
    for (int p = 0; p + 1 < n - 1; ++p)
      for (int kk = 0; kk < ctx.m; ++kk) dalpha[p][kk] = top.dalpha[p][kk].value();
    for (int kk = 0; kk < ctx.m; ++kk) dalpha[n - 2][kk] = top.alpha.partial(kk).value();

    for (int i = 0; i < n - 1; ++i) {
      out.z[i] = top.z[i].value();
      out.alpha[i] = top.alpha_values[i];
      out.w.push_back(top.w_values[i]);
    }
    z_n = x[n - 1] - top.alpha.value();
    z_nm1 = out.z[n - 2];

    w_n = model.phi_values(n - 1, x);
    for (int j = 1; j <= n - 1; ++j)
      w_n -= dalpha[n - 2][x_index(j - 1)] * model.phi_values(j - 1, x);
    out.w.push_back(w_n);

    for (int r = 0; r < q; ++r) tau_theta_n[r] = top.tau_theta[r].value() + w_n[r] * z_n;
    const double wtw = w_n.squaredNorm();
    const double S = std::sqrt(z_n * z_n * wtw + epsilon * epsilon);
    const double sat_n = z_n * wtw / S;
    tau_delta_n = top.tau_delta.value() + z_n * sat_n;

    Eigen::VectorXd grad_theta(q);
    for (int r = 0; r < q; ++r) grad_theta[r] = dalpha[n - 2][theta_index(n, r)];
    psi_theta = grad_theta.dot(config.Gamma * tau_theta_n);
    double cross_theta = 0.0;
    double cross_delta = 0.0;
    for (int j = 2; j <= n - 1; ++j) {
      Eigen::VectorXd gj(q);
      for (int r = 0; r < q; ++r) gj[r] = dalpha[j - 2][theta_index(n, r)];
      cross_theta += gj.dot(config.Gamma * w_n) * out.z[j - 1];
      cross_delta += dalpha[j - 2][delta_index(n, q)] * out.z[j - 1];
    }
    psi_theta += cross_theta;
    psi_delta = config.gamma_delta * dalpha[n - 2][delta_index(n, q)] * tau_delta_n +
                config.gamma_delta * sat_n * cross_delta;

    for (int j = 1; j <= n - 1; ++j) f_o -= dalpha[n - 2][x_index(j - 1)] * x[j];
    for (int j = 0; j <= n - 2; ++j) f_o -= dalpha[n - 2][mu_index(n, q, j)] * mu_values[j + 1];

    out.Psi = z_nm1 + w_n.dot(a.theta_hat) + f_o - psi_theta - psi_delta;
    out.K = config.k[n - 1] * mu_values[0] + a.delta_hat * wtw / S +
            out.Psi * out.Psi / std::sqrt(z_n * z_n * out.Psi * out.Psi + epsilon * epsilon);
    out.alpha_partials = std::move(dalpha);
  }

  out.z[n - 1] = z_n;
  out.s_or_zn = z_n;
  out.u_bar = -(out.K * z_n);
  out.u = a.rho_hat * out.u_bar;
  out.theta_hat_rate = config.Gamma * tau_theta_n;
  out.delta_hat_rate = config.gamma_delta * tau_delta_n;
  out.rho_hat_rate = -config.gamma_rho * model.control_sign * z_n * out.u_bar;
  return out;
}

ControlOutput control_law(const StrictFeedbackModel& model, const GainConfig& config,
                          const Eigen::VectorXd& x, const AdaptiveState& a, double t,
                          const TimeScale& ts) {
  std::vector<double> mu_values(model.n);
  for (int j = 0; j < model.n; ++j) mu_values[j] = ts.mu_deriv(t, j);
  return control_law_at(model, config, x, a, mu_values, config.epsilon(t));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> congelation_decompose(
    const Eigen::VectorXd& theta_t, const AdaptiveState& a, const Eigen::VectorXd& ell_theta) {
  return {theta_t - ell_theta, ell_theta - a.theta_hat};
}

}  // namespace ptctl
