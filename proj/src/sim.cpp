#include "ptctl/sim.hpp"

#include <algorithm>
#include <cmath>

#include "ptctl/normalform.hpp"

namespace ptctl {

namespace {
constexpr double kBlowUpThreshold = 1e12;
}

double Scenario::stop_margin() const {
  if (integration.stop_margin > 0) return integration.stop_margin;
  return timescale.finite_horizon() ? 1e-3 * timescale.horizon() : 0.0;
}

double Scenario::switch_time() const {
  if (!timescale.finite_horizon()) return std::numeric_limits<double>::infinity();
  return timescale.horizon() - stop_margin();
}

ValidationReport validate_scenario(const Scenario& sc) {
  ValidationReport report = validate_gains(sc.gains, sc.model, sc.a0.rho_hat);
  if (sc.x0.size() != sc.model.n) report.violations.push_back("x(0) dimension mismatch");
  if (sc.a0.theta_hat.size() != sc.model.q)
    report.violations.push_back("theta_hat(0) dimension mismatch");
  if (!(sc.integration.h > 0)) report.violations.push_back("step size must be positive");
  if (!(sc.integration.singular_step_factor > 0))
    report.violations.push_back("singular step factor must be positive");
  if (!(sc.t_end > 0)) report.violations.push_back("horizon must be positive");

  const bool filter_law = sc.controller != ControllerKind::Recursive;
  if (filter_law && !sc.model.normal_form)
    report.violations.push_back("filter-variable law requires a normal-form model");
  const TimeScaleKind tk = sc.timescale.kind();
  switch (sc.controller) {
    case ControllerKind::FilterPrescribedTime:
      if (tk != TimeScaleKind::PrescribedTime)
        report.violations.push_back("prescribed-time filter law needs a prescribed-time gain");
      break;
    case ControllerKind::FilterExponential:
      if (tk != TimeScaleKind::Exponential)
        report.violations.push_back("exponential law needs an exponential gain");
      break;
    case ControllerKind::FilterSuperExponential:
      if (tk != TimeScaleKind::SuperExponential)
        report.violations.push_back("super-exponential law needs a super-exponential gain");
      break;
    case ControllerKind::FilterAsymptotic:
      if (tk != TimeScaleKind::Asymptotic)
        report.violations.push_back("constant-gain law needs the constant gain");
      break;
    case ControllerKind::Recursive:
      break;
  }
  if (sc.timescale.finite_horizon()) {
    if (!(sc.stop_margin() > 0)) report.violations.push_back("stop margin must be positive");
    const double cutoff = sc.switch_time();
    if (!sc.non_stop && sc.t_end > cutoff + 1e-15)
      report.violations.push_back("horizon must not exceed T minus the stop margin");
  }
  return report;
}

namespace {

struct ClosedLoop {
  const Scenario* sc;
  int n, q;

  ControlOutput control(const Eigen::VectorXd& x, const AdaptiveState& a, double t) const {
    ControlOutput out;
    if (sc->controller == ControllerKind::Recursive)
      out = control_law(sc->model, sc->gains, x, a, t, sc->timescale);
    else
      out = control_law_nf(sc->model, sc->gains, x, a, t, sc->timescale);
    if (sc->debug.flip_rho_adaptation_sign) out.rho_hat_rate = -out.rho_hat_rate;
    return out;
  }

  // Augmented state layout: [x (n), theta_hat (q), delta_hat, rho_hat].
  Eigen::VectorXd pack(const Eigen::VectorXd& x, const AdaptiveState& a) const {
    Eigen::VectorXd X(n + q + 2);
    X.head(n) = x;
    X.segment(n, q) = a.theta_hat;
    X[n + q] = a.delta_hat;
    X[n + q + 1] = a.rho_hat;
    return X;
  }
  void unpack(const Eigen::VectorXd& X, Eigen::VectorXd& x, AdaptiveState& a) const {
    x = X.head(n);
    a.theta_hat = X.segment(n, q);
    a.delta_hat = X[n + q];
    a.rho_hat = X[n + q + 1];
  }

  Eigen::VectorXd rate(double t, const Eigen::VectorXd& X, bool open_loop) const {
    Eigen::VectorXd x;
    AdaptiveState a;
    unpack(X, x, a);
    Eigen::VectorXd dX = Eigen::VectorXd::Zero(X.size());
    if (open_loop) {
      dX.head(n) = plant_rhs(sc->model, x, 0.0, t);
      return dX;
    }
    const ControlOutput co = control(x, a, t);
    dX.head(n) = plant_rhs(sc->model, x, co.u, t);
    dX.segment(n, q) = co.theta_hat_rate;
    dX[n + q] = co.delta_hat_rate;
    dX[n + q + 1] = co.rho_hat_rate;
    return dX;
  }
};

void check_finite(const Eigen::VectorXd& X, double t) {
  for (int i = 0; i < X.size(); ++i) {
    if (!std::isfinite(X[i]) || std::abs(X[i]) > kBlowUpThreshold)
      throw SimulationError("state blow-up at t=" + std::to_string(t) + " (component " +
                            std::to_string(i) + ")");
  }
}

Eigen::VectorXd rk4_step(const ClosedLoop& loop, double t, const Eigen::VectorXd& X, double h,
                         bool open_loop) {
  const Eigen::VectorXd k1 = loop.rate(t, X, open_loop);
  const Eigen::VectorXd k2 = loop.rate(t + 0.5 * h, X + 0.5 * h * k1, open_loop);
  const Eigen::VectorXd k3 = loop.rate(t + 0.5 * h, X + 0.5 * h * k2, open_loop);
  const Eigen::VectorXd k4 = loop.rate(t + h, X + h * k3, open_loop);
  return X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Recorder {
  Trajectory traj;
  const Scenario* sc;
  std::vector<Eigen::VectorXd> x_rows, theta_rows, z_rows;
  double tau_accum = 0.0;   // super-exponential stretched time (trapezoid)
  double last_t = 0.0;
  double last_mu = 0.0;
  bool have_last = false;

  void init(const Scenario& s) {
    sc = &s;
    traj.n = s.model.n;
    traj.q = s.model.q;
    traj.filter_controller = s.controller != ControllerKind::Recursive;
    traj.switch_time = s.switch_time();
  }

  double stretched_time(double t) {
    const TimeScale& ts = sc->timescale;
    switch (ts.kind()) {
      case TimeScaleKind::PrescribedTime: {
        const double cap = std::min(t, sc->switch_time());
        return ts.t_to_tau(cap);
      }
      case TimeScaleKind::Asymptotic:
        return t;
      case TimeScaleKind::Exponential:
        return std::expm1(ts.lambda1() * t) / ts.lambda1();
      case TimeScaleKind::SuperExponential: {
        const double m = ts.mu(t);
        if (have_last) tau_accum += 0.5 * (last_mu + m) * (t - last_t);
        last_t = t;
        last_mu = m;
        have_last = true;
        return tau_accum;
      }
    }
    return t;
  }

  void record(double t, const Eigen::VectorXd& x, const AdaptiveState& a, const ControlOutput& co,
              bool open_loop) {
    traj.t.push_back(t);
    traj.tau.push_back(stretched_time(t));
    x_rows.push_back(x);
    theta_rows.push_back(a.theta_hat);
    traj.delta_hat.push_back(a.delta_hat);
    traj.rho_hat.push_back(a.rho_hat);
    const int zcols = traj.filter_controller ? 1 : traj.n;
    if (open_loop) {
      traj.u.push_back(0.0);
      traj.u_bar.push_back(0.0);
      traj.K.push_back(0.0);
      traj.s_or_zn.push_back(0.0);
      z_rows.push_back(Eigen::VectorXd::Zero(zcols));
    } else {
      traj.u.push_back(co.u);
      traj.u_bar.push_back(co.u_bar);
      traj.K.push_back(co.K);
      traj.s_or_zn.push_back(co.s_or_zn);
      if (traj.filter_controller)
        z_rows.push_back(Eigen::VectorXd::Constant(1, co.s_or_zn));
      else
        z_rows.push_back(co.z);
    }
  }

  Trajectory finish() {
    const std::size_t rows = traj.t.size();
    traj.x.resize(rows, traj.n);
    traj.theta_hat.resize(rows, traj.q);
    traj.z.resize(rows, traj.filter_controller ? 1 : traj.n);
    for (std::size_t r = 0; r < rows; ++r) {
      traj.x.row(r) = x_rows[r].transpose();
      traj.theta_hat.row(r) = theta_rows[r].transpose();
      traj.z.row(r) = z_rows[r].transpose();
    }
    return std::move(traj);
  }
};

}  // namespace

Trajectory integrate(const Scenario& sc) {
  const ValidationReport report = validate_scenario(sc);
  if (!report.passed()) throw std::invalid_argument("scenario rejected: " + report.summary());

  ClosedLoop loop{&sc, sc.model.n, sc.model.q};
  Recorder rec;
  rec.init(sc);

  const double switch_time = sc.switch_time();
  const double closed_end = std::min(sc.t_end, switch_time);

  Eigen::VectorXd X = loop.pack(sc.x0, sc.a0);
  Eigen::VectorXd x;
  AdaptiveState a;

  auto record_closed = [&](double t) {
    loop.unpack(X, x, a);
    rec.record(t, x, a, loop.control(x, a, t), false);
  };
  auto record_open = [&](double t) {
    loop.unpack(X, x, a);
    rec.record(t, x, a, ControlOutput{}, true);
  };

  double t = 0.0;
  record_closed(0.0);

  if (sc.integration.domain == IntegrationOptions::Domain::Tau) {
    if (!sc.timescale.finite_horizon())
      throw std::invalid_argument("stretched-axis integration needs a prescribed-time gain");
    // dX/dtau = rate(t(tau)) / beta(tau), fixed tau step
    const double tau_end = sc.timescale.t_to_tau(closed_end);
    const double h = sc.integration.h;
    double tau = 0.0;
    while (tau < tau_end - 1e-15) {
      const double step = std::min(h, tau_end - tau);
      auto scaled = [&](double tau_pt, const Eigen::VectorXd& Y) {
        return (loop.rate(sc.timescale.tau_to_t(tau_pt), Y, false) / sc.timescale.beta(tau_pt))
            .eval();
      };
      const Eigen::VectorXd k1 = scaled(tau, X);
      const Eigen::VectorXd k2 = scaled(tau + 0.5 * step, X + 0.5 * step * k1);
      const Eigen::VectorXd k3 = scaled(tau + 0.5 * step, X + 0.5 * step * k2);
      const Eigen::VectorXd k4 = scaled(tau + step, X + step * k3);
      X += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      tau += step;
      t = sc.timescale.tau_to_t(tau);
      check_finite(X, t);
      record_closed(t);
    }
    t = closed_end;
  } else {
    while (t < closed_end - 1e-15) {
      double h = std::min(sc.integration.h,
                          sc.integration.singular_step_factor / sc.timescale.mu(t));
      h = std::min(h, closed_end - t);
      X = rk4_step(loop, t, X, h, false);
      t += h;
      check_finite(X, t);
      record_closed(t);
    }
  }

  if (sc.non_stop && sc.t_end > closed_end) {
    // input off past the stop margin; plant runs open loop, estimators frozen
    while (t < sc.t_end - 1e-15) {
      const double h = std::min(sc.integration.h, sc.t_end - t);
      X = rk4_step(loop, t, X, h, true);
      t += h;
      check_finite(X, t);
      record_open(t);
    }
  }
  return rec.finish();
}

Metrics compute_metrics(const Trajectory& traj, double band) {
  Metrics m;
  const std::size_t rows = traj.rows();
  m.band_entry_time.assign(traj.n, 0.0);
  m.settled.assign(traj.n, true);
  for (int i = 0; i < traj.n; ++i) {
    double entry = 0.0;
    bool exceeded = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (std::abs(traj.x(r, i)) > band) {
        entry = traj.t[r];
        exceeded = true;
      }
    }
    if (!exceeded) {
      m.band_entry_time[i] = 0.0;
    } else if (std::abs(traj.x(rows - 1, i)) > band) {
      m.band_entry_time[i] = std::numeric_limits<double>::infinity();
      m.settled[i] = false;
    } else {
      m.band_entry_time[i] = entry;
    }
  }
  m.peak_u = 0.0;
  for (double v : traj.u) m.peak_u = std::max(m.peak_u, std::abs(v));
  m.terminal_theta_hat = traj.theta_hat.row(rows - 1).transpose();
  m.terminal_delta_hat = traj.delta_hat.back();
  m.terminal_rho_hat = traj.rho_hat.back();
  m.terminal_state_norm = traj.x.row(rows - 1).norm();
  return m;
}

}  // namespace ptctl
