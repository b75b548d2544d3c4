#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ptctl/model.hpp"

using namespace ptctl;

TEST_SUITE_BEGIN("model");

TEST_CASE("benchmark plant published values") {
  const StrictFeedbackModel m = builtin_benchmark();
  CHECK(m.n == 3);
  CHECK(m.q == 1);
  CHECK(m.b_true(0.0) == doctest::Approx(1.6));
  CHECK(m.b_lower == 1.2);
  CHECK(m.truth->delta_theta == doctest::Approx(1.0));
  CHECK(m.truth->ell_b == doctest::Approx(1.2));
}

TEST_CASE("wing-rock plant published values") {
  const StrictFeedbackModel m = builtin_wing_rock();
  CHECK(m.n == 2);
  CHECK(m.q == 2);
  CHECK(m.b_lower == 1.8);
  const Eigen::VectorXd th0 = m.theta_true(0.0, Eigen::Vector2d::Zero());
  CHECK(th0[0] == doctest::Approx(-26.6667));
  CHECK(th0[1] == doctest::Approx(0.67485));
  // phi_1 identically zero
  const Eigen::VectorXd x = Eigen::Vector2d(0.4, -0.8);
  CHECK(m.phi_values(0, x).norm() == 0.0);
  CHECK(m.normal_form);
}

TEST_CASE("origin is an equilibrium") {
  for (const auto& name : {"benchmark", "wing_rock"}) {
    const StrictFeedbackModel m = model_by_name(name);
    const Eigen::VectorXd rhs = plant_rhs(m, Eigen::VectorXd::Zero(m.n), 0.0, 1.23);
    CHECK(rhs.norm() == 0.0);
  }
}

TEST_CASE("benchmark drift at a nonzero state") {
  const StrictFeedbackModel m = builtin_benchmark();
  Eigen::Vector3d x(1.0, 0.0, 0.0);
  // theta(0) = 1 + 0.6 cos(0) + 0.2 sin(0) + 0.2 sgn(sin 0) = 1.6
  const Eigen::VectorXd rhs = plant_rhs(m, x, 0.0, 0.0);
  CHECK(rhs[0] == doctest::Approx(1.6));
  CHECK(rhs[1] == 0.0);
  CHECK(rhs[2] == 0.0);
}

TEST_CASE("wing-rock drift at a nonzero state") {
  const StrictFeedbackModel m = builtin_wing_rock();
  Eigen::Vector2d x(0.2, 0.0);
  const Eigen::VectorXd rhs = plant_rhs(m, x, 0.0, 0.0);
  CHECK(rhs[0] == doctest::Approx(0.0));
  CHECK(rhs[1] == doctest::Approx(0.2 * -26.6667));
}

TEST_CASE("last equation is affine in the input with coefficient b") {
  for (const auto& name : {"benchmark", "wing_rock"}) {
    const StrictFeedbackModel m = model_by_name(name);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(m.n, 0.3, -0.5);
    for (double t : {0.0, 0.7, 3.1}) {
      for (double u : {-2.0, 0.5}) {
        const Eigen::VectorXd diff = plant_rhs(m, x, u, t) - plant_rhs(m, x, 0.0, t);
        CHECK(diff.head(m.n - 1).norm() == 0.0);
        CHECK(diff[m.n - 1] == doctest::Approx(m.b_true(t) * u).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("assumption sampling passes for both built-ins") {
  for (const auto& name : {"benchmark", "wing_rock"}) {
    const StrictFeedbackModel m = model_by_name(name);
    const ModelCheckReport report = check_model_assumptions(m, 20.0, 4000);
    CHECK(report.passed());
  }
}

TEST_CASE("unknown model name is rejected") {
  CHECK_THROWS_AS(model_by_name("pendulum"), std::invalid_argument);
}

TEST_SUITE_END();
