#pragma once

#include <array>

// Hand-derived closed-form reference for the three-state benchmark plant
// (phi_1 = x1, phi_2 = phi_3 = 0, scalar parameter). Written directly from
// the per-stage formulas with explicitly expanded partial derivatives; shares
// no code with the production recursion.

namespace oracle {

struct BenchmarkInputs {
  double k1, k2, k3;
  double gamma;        // scalar adaptation gain
  double gamma_delta;
  double gamma_rho;
  double eps;
  double x1, x2, x3;
  double th;   // parameter estimate
  double dh;   // radius estimate
  double rho;  // reciprocal-gain estimate
  double mu0, mu1, mu2;  // gain and its first two derivatives
};

struct BenchmarkOutputs {
  double alpha1 = 0, alpha2 = 0;
  double z1 = 0, z2 = 0, z3 = 0;
  double w1 = 0, w2 = 0, w3 = 0;
  double tau_theta3 = 0, tau_delta3 = 0;
  double Psi = 0, K = 0, u_bar = 0, u = 0;
  double theta_rate = 0, delta_rate = 0, rho_rate = 0;
  // partials over seeds [x1, x2, x3, th, dh, mu0, mu1]
  std::array<double, 7> dalpha1{};
  std::array<double, 7> dalpha2{};
};

BenchmarkOutputs benchmark_reference(const BenchmarkInputs& in);

}  // namespace oracle
