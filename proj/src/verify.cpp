#include "ptctl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ptctl/scenario.hpp"

namespace ptctl {
namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  return std::exp(dist(rng));
}

double signed_log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_int_distribution<int> coin(0, 1);
  return (coin(rng) ? 1.0 : -1.0) * log_uniform(rng, lo, hi);
}

std::string format_margin(double margin) {
  std::ostringstream os;
  os.precision(6);
  os << margin;
  return os.str();
}

}  // namespace

CheckResult check_saturation_inequality(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  res.name = "saturation_inequality";
  double worst = std::numeric_limits<double>::infinity();
  double worst_s = 0, worst_sigma = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = (i == 0) ? 0.0 : signed_log_uniform(rng, 1e-9, 1e9);
    const double sigma = log_uniform(rng, 1e-6, 1e3);
    const double lhs = std::abs(s) - s * s / std::sqrt(s * s + sigma * sigma);
    const double margin = sigma - lhs;
    if (margin < worst) {
      worst = margin;
      worst_s = s;
      worst_sigma = sigma;
    }
  }
  res.worst_margin = worst;
  res.passed = worst > 0;
  std::ostringstream os;
  os << "min(sigma - lhs) = " << format_margin(worst) << " at s=" << worst_s
     << ", sigma=" << worst_sigma;
  res.detail = os.str();
  return res;
}

CheckResult check_input_bracket_bound(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  res.name = "input_bracket_bound";
  double worst = std::numeric_limits<double>::infinity();
  // magnitudes capped so the bracket's evaluation roundoff (~|z Psi| eps_mach)
  // stays far below the analytic margin of order eps
  for (int i = 0; i < samples; ++i) {
    const double z = (i % 7 == 0) ? 0.0 : signed_log_uniform(rng, 1e-8, 3e3);
    const double psi = (i % 11 == 0) ? 0.0 : signed_log_uniform(rng, 1e-8, 3e3);
    const double eps = log_uniform(rng, 1e-6, 1e2);
    const double kappa = -psi * psi / std::sqrt(z * z * psi * psi + eps * eps);
    const double margin = eps - (kappa * z * z + psi * z);
    worst = std::min(worst, margin);
  }
  res.worst_margin = worst;
  res.passed = worst > 0;
  res.detail = "min(eps - kappa z^2 - Psi z) = " + format_margin(worst);
  return res;
}

CheckResult check_comparison_decay(const ScalarComparisonInstance& inst, double tau_max, double h) {
  CheckResult res;
  res.name = inst.name;

  // infimum of the stage gain over the grid
  double k_inf = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::ceil(tau_max / h));
  for (int j = 0; j <= steps; ++j) k_inf = std::min(k_inf, inst.K(std::min(j * h, tau_max)));
  if (!(k_inf > 0)) {
    res.detail = "gain is not positive";
    res.worst_margin = k_inf;
    return res;
  }

  auto rate = [&](double tau, double z) {
    return -inst.K(tau) * z + inst.Y(z, tau) / std::pow(inst.gamma(tau), inst.sigma);
  };

  double z = inst.z0;
  double tau = 0.0;
  const double v0 = std::abs(z) * std::pow(inst.gamma(0.0), inst.sigma);
  double v_prev = v0;
  double mono_margin = std::numeric_limits<double>::infinity();
  while (tau < tau_max - 1e-12) {
    const double step = std::min(h, tau_max - tau);
    const double k1 = rate(tau, z);
    const double k2 = rate(tau + 0.5 * step, z + 0.5 * step * k1);
    const double k3 = rate(tau + 0.5 * step, z + 0.5 * step * k2);
    const double k4 = rate(tau + step, z + step * k3);
    z += (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    tau += step;
    const double v = std::abs(z) * std::pow(inst.gamma(tau), inst.sigma);
    mono_margin = std::min(mono_margin, v_prev * (1 + 1e-9) + 1e-15 * v0 - v);
    v_prev = v;
  }
  const double v_final = v_prev;
  const double final_margin = 1e-6 * v0 - v_final;

  // growth-rate condition in the tail: k_inf - sigma gamma'/gamma > 0
  double cond_margin = std::numeric_limits<double>::infinity();
  for (double s = 0.5 * tau_max; s <= tau_max - h; s += h) {
    const double g = inst.gamma(s);
    const double gp = (inst.gamma(s + 1e-5) - inst.gamma(s - 1e-5)) / 2e-5;
    cond_margin = std::min(cond_margin, k_inf - inst.sigma * gp / g);
  }
  // weighted decay condition: e^{-k tau} gamma^sigma must shrink
  const double q0 = std::pow(inst.gamma(0.0), inst.sigma);
  const double q_final = std::exp(-k_inf * tau_max) * std::pow(inst.gamma(tau_max), inst.sigma);
  const double decay_margin = 1e-3 * q0 - q_final;

  res.worst_margin = std::min({mono_margin, final_margin, cond_margin, decay_margin});
  res.passed = res.worst_margin > 0;
  std::ostringstream os;
  os << "final |z gamma^sigma| = " << v_final << " (start " << v0
     << "), monotone slack = " << format_margin(mono_margin);
  res.detail = os.str();
  return res;
}

std::vector<ScalarComparisonInstance> scalar_comparison_instances() {
  std::vector<ScalarComparisonInstance> out;
  {
    ScalarComparisonInstance inst;
    inst.name = "comparison_exp_weight";
    inst.K = [](double) { return 2.0; };
    inst.gamma = [](double tau) { return std::exp(tau) / 2.0; };
    inst.sigma = 1.0;
    inst.z0 = 1.0;
    inst.Y = [](double, double) { return 0.0; };
    out.push_back(inst);
  }
  {
    ScalarComparisonInstance inst;
    inst.name = "comparison_poly_weight";
    const double a0 = 1.0, T = 2.0;
    inst.K = [](double) { return 2.0; };
    inst.gamma = [a0, T](double tau) {
      const double b = tau / (a0 * T) + 1.0;
      return a0 * b * b;
    };
    inst.sigma = 1.0;
    inst.z0 = 1.0;
    inst.Y = [](double z, double) { return 0.5 * z; };
    out.push_back(inst);
  }
  {
    ScalarComparisonInstance inst;
    inst.name = "comparison_min_gain";
    inst.K = [](double) { return 1.5; };
    inst.gamma = [](double tau) { return std::exp(tau) / 2.0; };
    inst.sigma = 1.0;
    inst.z0 = 1.0;
    inst.Y = [](double z, double tau) { return 0.2 * z * std::cos(tau); };
    out.push_back(inst);
  }
  return out;
}

CheckResult check_filter_cascade(const FilterCoefficients& fc, double T,
                                 const Eigen::VectorXd& k_filter, const Eigen::VectorXd& s_init) {
  CheckResult res;
  res.name = "filter_cascade";
  const int n = fc.n;
  if (k_filter.size() != n - 1 || s_init.size() != n - 1) {
    res.detail = "dimension mismatch";
    res.worst_margin = -1;
    return res;
  }
  if (n == 1) {
    res.passed = true;
    res.worst_margin = std::numeric_limits<double>::infinity();
    res.detail = "no cascade below the terminal signal";
    return res;
  }

  const double scale = std::max({1.0, s_init.cwiseAbs().maxCoeff(), T});
  double worst = std::numeric_limits<double>::infinity();
  std::ostringstream detail;

  // injected terminal signals: identically zero, then (T - t)^p
  const std::vector<std::function<double(double)>> injections = {
      [](double) { return 0.0; },
      [T](double t) { return T - t; },
      [T](double t) { return (T - t) * (T - t); },
  };
  int inj_index = 0;
  for (const auto& s_n : injections) {
    Eigen::VectorXd s = s_init;
    double t = 0.0;
    // milestones eta = T * 10^{-m}
    std::vector<double> milestones;
    for (int mexp = 2; mexp <= 6; ++mexp) milestones.push_back(T * std::pow(10.0, -mexp));
    std::size_t next = 0;
    double prev_peak = std::numeric_limits<double>::infinity();
    double final_peak = 0;
    while (next < milestones.size()) {
      const double target = T - milestones[next];
      double h = std::min(1e-3 * T, 0.01 * (T - t));
      h = std::min(h, target - t);
      auto rate = [&](double tp, const Eigen::VectorXd& sv) {
        Eigen::VectorXd ds(n - 1);
        for (int i = 1; i <= n - 1; ++i) {
          const double feed = (i == n - 1) ? s_n(tp) : sv[i];
          ds[i - 1] = -k_filter[i - 1] / (T - tp) * sv[i - 1] + feed;
        }
        return ds;
      };
      const Eigen::VectorXd k1 = rate(t, s);
      const Eigen::VectorXd k2 = rate(t + 0.5 * h, s + 0.5 * h * k1);
      const Eigen::VectorXd k3 = rate(t + 0.5 * h, s + 0.5 * h * k2);
      const Eigen::VectorXd k4 = rate(t + h, s + h * k3);
      s += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
      t += h;
      if (t >= target - 1e-15) {
        const double peak = s.cwiseAbs().maxCoeff();
        worst = std::min(worst, prev_peak - peak + 1e-12 * scale);  // must keep shrinking
        prev_peak = peak;
        final_peak = peak;
        ++next;
      }
    }
    worst = std::min(worst, 1e-6 * scale - final_peak);
    detail << (inj_index ? ", " : "") << "injection " << inj_index << ": final peak "
           << final_peak;
    ++inj_index;
  }
  res.worst_margin = worst;
  res.passed = worst > 0;
  res.detail = detail.str();
  return res;
}

Eigen::MatrixXd lyapunov_components(const Trajectory& traj, const GroundTruth& truth,
                                    const GainConfig& config) {
  const std::size_t rows = traj.rows();
  Eigen::MatrixXd V(rows, 4);
  const Eigen::MatrixXd Gamma_inv = config.Gamma.inverse();
  for (std::size_t r = 0; r < rows; ++r) {
    V(r, 0) = 0.5 * traj.z.row(r).squaredNorm();
    const Eigen::VectorXd err = truth.ell_theta - traj.theta_hat.row(r).transpose();
    V(r, 1) = 0.5 * err.dot(Gamma_inv * err);
    const double rho_err = 1.0 / truth.ell_b - traj.rho_hat[r];
    V(r, 2) = std::abs(truth.ell_b) / (2.0 * config.gamma_rho) * rho_err * rho_err;
    const double delta_err = truth.delta_theta - traj.delta_hat[r];
    V(r, 3) = config.gamma_delta > 0 ? delta_err * delta_err / (2.0 * config.gamma_delta) : 0.0;
  }
  return V;
}

CheckResult check_lyapunov_decrement(const Trajectory& traj, const GroundTruth& truth,
                                     const GainConfig& config, const StrictFeedbackModel& model) {
  CheckResult res;
  res.name = "lyapunov_benchmark";
  if (traj.filter_controller || traj.z.cols() != traj.n || traj.n != model.n) {
    res.detail = "needs a recursive-law trajectory with full error coordinates";
    res.worst_margin = -1;
    return res;
  }

  // keep the strictly closed-loop, strictly pre-horizon part
  std::size_t rows = traj.rows();
  while (rows > 0 && traj.t[rows - 1] >= traj.switch_time - 1e-15) --rows;
  if (rows < 5) {
    res.detail = "trajectory too short";
    res.worst_margin = -1;
    return res;
  }

  const Eigen::MatrixXd Vc = lyapunov_components(traj, truth, config);
  Eigen::VectorXd V(rows);
  for (std::size_t r = 0; r < rows; ++r) V[r] = Vc.row(r).sum();

  // nonuniform three-point first and second derivatives on the stretched grid
  std::vector<double> dV(rows, 0.0), d2V(rows, 0.0);
  for (std::size_t r = 1; r + 1 < rows; ++r) {
    const double hm = traj.tau[r] - traj.tau[r - 1];
    const double hp = traj.tau[r + 1] - traj.tau[r];
    dV[r] = (hm * hm * V[r + 1] + (hp * hp - hm * hm) * V[r] - hp * hp * V[r - 1]) /
            (hp * hm * (hp + hm));
    d2V[r] = 2.0 * (hm * V[r + 1] - (hp + hm) * V[r] + hp * V[r - 1]) / (hp * hm * (hp + hm));
  }

  const double n_delta = traj.n * truth.delta_theta + 1.0;
  const double Vmax = V.maxCoeff();
  double worst = std::numeric_limits<double>::infinity();
  double worst_tau = 0.0;
  for (std::size_t r = 2; r + 2 < rows; ++r) {
    const double hm = traj.tau[r] - traj.tau[r - 1];
    const double hp = traj.tau[r + 1] - traj.tau[r];
    const double beta = std::exp(traj.tau[r]) / config.T;
    double bound = n_delta * config.epsilon(traj.t[r]) / beta;
    for (int i = 0; i < traj.n; ++i) bound -= config.k[i] * traj.z(r, i) * traj.z(r, i);
    // third-derivative scale from neighbouring curvature differences
    const double m3 = std::abs(d2V[r + 1] - d2V[r - 1]) /
                      std::max(traj.tau[r + 1] - traj.tau[r - 1], 1e-300);
    const double tol = 1e-8 * std::max(1.0, Vmax) + 0.5 * hp * hm * m3;
    const double margin = bound + tol - dV[r];
    if (margin < worst) {
      worst = margin;
      worst_tau = traj.tau[r];
    }
  }
  res.worst_margin = worst;
  res.passed = worst >= 0;
  std::ostringstream os;
  os << "min(bound + tol - dV/dtau) = " << format_margin(worst) << " at tau=" << worst_tau;
  res.detail = os.str();
  return res;
}

CheckResult check_gradients(const StrictFeedbackModel& model, const GainConfig& config,
                            int samples, std::uint64_t seed) {
  CheckResult res;
  res.name = "gradients";
  const int n = model.n;
  const int q = model.q;
  const int m = seed_count(n, q);
  if (n < 2) {
    res.passed = true;
    res.worst_margin = std::numeric_limits<double>::infinity();
    res.detail = "no virtual controls below the input stage";
    return res;
  }
  const double T = config.T > 0 ? config.T : 2.0;
  const TimeScale ts = TimeScale::prescribed_time(T);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  std::uniform_real_distribution<double> uth(-2.0, 2.0);
  std::uniform_real_distribution<double> ud(0.0, 2.0);
  std::uniform_real_distribution<double> utime(0.0, 0.8 * T);

  double worst_err = 0.0;
  std::string worst_what;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = ux(rng);
    AdaptiveState a;
    a.theta_hat.resize(q);
    for (int r = 0; r < q; ++r) a.theta_hat[r] = uth(rng);
    a.delta_hat = ud(rng);
    a.rho_hat = 1.0;
    const double t = utime(rng);
    std::vector<double> mu(n);
    for (int j = 0; j < n; ++j) mu[j] = ts.mu_deriv(t, j);
    const double eps = config.epsilon(t);

    const ControlOutput co = control_law_at(model, config, x, a, mu, eps);

    auto alpha_at = [&](const Eigen::VectorXd& xv, const AdaptiveState& av,
                        const std::vector<double>& muv) {
      return control_law_at(model, config, xv, av, muv, eps).alpha;
    };
    for (int k = 0; k < m; ++k) {
      double base;
      if (k < n)
        base = x[k];
      else if (k < n + q)
        base = a.theta_hat[k - n];
      else if (k == n + q)
        base = a.delta_hat;
      else
        base = mu[k - (n + q + 1)];
      const double h = 3e-6 * std::max(1.0, std::abs(base));

      auto eval_shifted = [&](double delta) {
        Eigen::VectorXd xv = x;
        AdaptiveState av = a;
        std::vector<double> muv = mu;
        if (k < n)
          xv[k] += delta;
        else if (k < n + q)
          av.theta_hat[k - n] += delta;
        else if (k == n + q)
          av.delta_hat += delta;
        else
          muv[k - (n + q + 1)] += delta;
        return alpha_at(xv, av, muv);
      };
      const Eigen::VectorXd plus = eval_shifted(h);
      const Eigen::VectorXd minus = eval_shifted(-h);
      for (int i = 0; i < n - 1; ++i) {
        const double fd = (plus[i] - minus[i]) / (2 * h);
        const double exact = co.alpha_partials[i][k];
        const double err =
            std::abs(exact - fd) / std::max({1.0, std::abs(exact), std::abs(fd)});
        if (err > worst_err) {
          worst_err = err;
          std::ostringstream os;
          os << "alpha_" << i + 1 << " seed " << k << " sample " << s;
          worst_what = os.str();
        }
      }
    }
  }
  res.worst_margin = 1e-6 - worst_err;
  res.passed = res.worst_margin > 0;
  res.detail = "worst relative error " + format_margin(worst_err) +
               (worst_what.empty() ? "" : " (" + worst_what + ")");
  return res;
}

CheckResult check_estimator_monotonicity(const Trajectory& traj) {
  CheckResult res;
  res.name = "estimator_monotonicity";
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < traj.rows(); ++r) {
    worst = std::min(worst, traj.rho_hat[r] - traj.rho_hat[r - 1]);
    worst = std::min(worst, traj.delta_hat[r] - traj.delta_hat[r - 1]);
  }
  res.worst_margin = worst;
  res.passed = worst >= 0;
  res.detail = "min increment " + format_margin(worst);
  return res;
}

std::vector<std::string> check_suite_names() {
  return {"saturation_inequality",        "input_bracket_bound",   "comparison_exp_weight",
          "comparison_poly_weight", "comparison_min_gain", "filter_cascade",
          "gradients",     "lyapunov_benchmark", "estimator_monotonicity"};
}

std::vector<CheckResult> run_check_suite(const std::string& only, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto wanted = [&](const std::string& name) { return only.empty() || only == name; };

  if (wanted("saturation_inequality")) out.push_back(check_saturation_inequality(100000, seed));
  if (wanted("input_bracket_bound")) out.push_back(check_input_bracket_bound(100000, seed + 1));
  for (const ScalarComparisonInstance& inst : scalar_comparison_instances())
    if (wanted(inst.name)) out.push_back(check_comparison_decay(inst));
  if (wanted("filter_cascade")) {
    const Eigen::Vector2d k(6.0, 6.0);
    Eigen::Vector2d s0(1.0, -0.5);
    out.push_back(check_filter_cascade(filter_coefficients(k, 3), 2.0, k, s0));
  }

  const bool needs_benchmark_run =
      wanted("lyapunov_benchmark") || wanted("estimator_monotonicity");
  if (wanted("gradients") || needs_benchmark_run) {
    const Scenario sc = scenario_preset("benchmark_t1");
    if (wanted("gradients"))
      out.push_back(check_gradients(sc.model, sc.gains, 100, seed + 2));
    if (needs_benchmark_run) {
      const Trajectory traj = integrate(sc);
      if (wanted("lyapunov_benchmark"))
        out.push_back(check_lyapunov_decrement(traj, *sc.model.truth, sc.gains, sc.model));
      if (wanted("estimator_monotonicity"))
        out.push_back(check_estimator_monotonicity(traj));
    }
  }
  return out;
}

}  // namespace ptctl
