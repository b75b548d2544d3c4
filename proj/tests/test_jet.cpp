#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ptctl/jet.hpp"

using ptctl::Jet;

TEST_SUITE_BEGIN("jet");

TEST_CASE("first derivatives of a rational-sqrt expression") {
  // f(a, b) = a^2 b + sqrt(a^2 + b^2) + a / b
  const double a = 1.3, b = -0.7;
  const Jet ja = Jet::seed(a, 2, 1, 0);
  const Jet jb = Jet::seed(b, 2, 1, 1);
  const Jet f = ja * ja * jb + sqrt(ja * ja + jb * jb) + ja / jb;

  const double r = std::sqrt(a * a + b * b);
  CHECK(f.value() == doctest::Approx(a * a * b + r + a / b).epsilon(1e-14));
  CHECK(f.partial(0).value() == doctest::Approx(2 * a * b + a / r + 1 / b).epsilon(1e-14));
  CHECK(f.partial(1).value() ==
        doctest::Approx(a * a + b / r - a / (b * b)).epsilon(1e-14));
}

TEST_CASE("second and third derivatives through nesting") {
  // f(x) = x^2 * sqrt(x), derivatives 2.5 x^1.5, 3.75 x^0.5, 1.875 x^-0.5
  const double x = 2.31;
  const Jet jx = Jet::seed(x, 1, 3, 0);
  const Jet f = jx * jx * sqrt(jx);
  CHECK(f.value() == doctest::Approx(std::pow(x, 2.5)).epsilon(1e-14));
  CHECK(f.partial(0).value() == doctest::Approx(2.5 * std::pow(x, 1.5)).epsilon(1e-14));
  CHECK(f.partial(0).partial(0).value() ==
        doctest::Approx(3.75 * std::pow(x, 0.5)).epsilon(1e-14));
  CHECK(f.partial(0).partial(0).partial(0).value() ==
        doctest::Approx(1.875 * std::pow(x, -0.5)).epsilon(1e-13));
}

TEST_CASE("mixed second partials are symmetric") {
  const Jet jx = Jet::seed(0.8, 2, 2, 0);
  const Jet jy = Jet::seed(-1.1, 2, 2, 1);
  const Jet f = sin(jx * jy) + exp(jx - jy) + jx / (2.0 + cos(jy));
  const double fxy = f.partial(0).partial(1).value();
  const double fyx = f.partial(1).partial(0).value();
  CHECK(fxy == doctest::Approx(fyx).epsilon(1e-13));
}

TEST_CASE("trig and exp chain rule") {
  const double x = 0.37;
  const Jet jx = Jet::seed(x, 1, 2, 0);
  const Jet f = exp(sin(jx));
  CHECK(f.partial(0).value() ==
        doctest::Approx(std::cos(x) * std::exp(std::sin(x))).epsilon(1e-14));
  const double second =
      std::exp(std::sin(x)) * (std::cos(x) * std::cos(x) - std::sin(x));
  CHECK(f.partial(0).partial(0).value() == doctest::Approx(second).epsilon(1e-13));
}

TEST_CASE("lower drops the deepest level and keeps the rest") {
  const Jet jx = Jet::seed(1.7, 1, 2, 0);
  const Jet f = jx * jx * jx;
  const Jet low = f.lower();
  CHECK(low.depth() == 1);
  CHECK(low.value() == f.value());
  CHECK(low.partial(0).value() == f.partial(0).value());
}

TEST_CASE("constants carry no derivatives") {
  const Jet c = Jet::constant(4.2, 3, 2);
  for (int k = 0; k < 3; ++k) CHECK(c.partial(k).value() == 0.0);
  const Jet s = Jet::seed(1.0, 3, 2, 1);
  CHECK((c * s).partial(1).value() == 4.2);
}

TEST_CASE("shape mismatch is rejected") {
  const Jet a = Jet::seed(1.0, 2, 1, 0);
  const Jet b = Jet::seed(1.0, 3, 1, 0);
  CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
  CHECK_THROWS_AS((void)Jet::seed(0.0, 2, 1, 5), std::invalid_argument);
}

TEST_SUITE_END();
