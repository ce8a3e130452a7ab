#include "doctest.h"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fbp/special_functions.hpp"

namespace {

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("value at the origin is one") {
  for (const double nu : {0.1, 0.3, 0.5, 0.8, 0.95, 1.0}) {
    CAPTURE(nu);
    CHECK(fbp::mittag_leffler(nu, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("order one reduces to the exponential") {
  for (double z = -30.0; z <= 5.0; z += 0.5) {
    CAPTURE(z);
    CHECK(rel_diff(fbp::mittag_leffler(1.0, z), std::exp(z)) < 1e-12);
  }
}

TEST_CASE("order one half matches the scaled complementary error function") {
  // E_{1/2}(-x) = exp(x^2) erfc(x), exercised across all three evaluation
  // regimes (series to x ~ 2.6, integral to ~ 6.1, tail expansion beyond).
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    CAPTURE(x);
    const double reference = std::exp(x * x) * boost::math::erfc(x);
    CHECK(rel_diff(fbp::mittag_leffler(0.5, -x), reference) < 1e-9);
  }
}

TEST_CASE("reference values") {
  // 20-digit values computed with an independent arbitrary-precision
  // evaluation of the defining series / integral representation.
  const struct {
    double nu;
    double z;
    double expected;
  } cases[] = {
      {0.5, -1.0, 0.42758357615580700441},
      {0.8, -1.6, 0.24583067538221879463},
      {0.3, -0.8, 0.51438195868824426638},
      {0.8, -50.0, 0.0044677761579029932956},
      {0.8, -4.0, 0.077048679930344759653},
      {0.95, -3.0, 0.067532022214071890132},
      {0.9, -1.0, 0.37606602142464188118},
      {0.4, -2.0, 0.27353529996067953854},
      {0.6, -1.0, 0.4133273409431062974},
      {0.7, -0.4375, 0.64111093799965558888},
      {0.2, -1.5, 0.37097697838398594137},
      {0.99, -5.0, 0.0097680921391741255086},
      {0.8, -0.8, 0.45868980172524714659},
      {0.5, 2.0, 108.94090438997797241},
      {0.8, 1.0, 3.2945692348790185555},
      {0.3, 0.5, 2.0620157899559994849},
      {0.25, 5.0, 1.0867037878654946774e272},
      {0.1, 1.8, 1.1572346635229231156e156},
  };
  for (const auto& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.z);
    CHECK(rel_diff(fbp::mittag_leffler(c.nu, c.z), c.expected) < 2e-9);
  }
}

TEST_CASE("evaluation regimes agree at their handoff points") {
  for (const double nu : {0.3, 0.5, 0.8, 0.95, 0.99}) {
    CAPTURE(nu);
    const double series_edge = fbp::detail::series_cutoff(nu);
    const double series = fbp::detail::ml_series(nu, -series_edge, 1e-12, 20000);
    const double integral = fbp::detail::ml_integral(nu, series_edge);
    CHECK(rel_diff(series, integral) < 1e-9);

    const double tail_edge = std::pow(37.0, nu);
    const double mid = fbp::detail::ml_integral(nu, tail_edge);
    const double tail = fbp::detail::ml_asymptotic(nu, tail_edge);
    CHECK(rel_diff(mid, tail) < 1e-12);
  }
}

TEST_CASE("tail expansion is already accurate inside the integral band") {
  // The divergent expansion bottoms out at different depths per order; by
  // x = 17^nu it has sub-ppm agreement for moderate orders.
  for (const double nu : {0.3, 0.5, 0.8}) {
    CAPTURE(nu);
    const double x = std::pow(17.0, nu);
    CHECK(rel_diff(fbp::detail::ml_asymptotic(nu, x),
                   fbp::detail::ml_integral(nu, x)) < 1e-6);
  }
}

TEST_CASE("completely monotone on the negative axis") {
  for (const double nu : {0.3, 0.6, 0.9}) {
    CAPTURE(nu);
    double previous = 1.0;
    for (double x = 0.25; x <= 50.0; x += 0.25) {
      CAPTURE(x);
      const double value = fbp::mittag_leffler(nu, -x);
      CHECK(value > 0.0);
      CHECK(value < previous);
      previous = value;
    }
  }
}

TEST_CASE("leading asymptotic term") {
  for (const double nu : {0.3, 0.5, 0.8}) {
    CAPTURE(nu);
    const double x = 12.5;
    CHECK(rel_diff(fbp::ml_leading_asymptotic(nu, x),
                   1.0 / (std::tgamma(1.0 - nu) * x)) < 1e-14);
    // Far down the tail the full value converges to the leading term.
    const double far = 1e8;
    CHECK(rel_diff(fbp::mittag_leffler(nu, -far),
                   fbp::ml_leading_asymptotic(nu, far)) < 1e-7);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(fbp::mittag_leffler(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(fbp::mittag_leffler(-0.2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(fbp::mittag_leffler(1.0 + 1e-7, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      fbp::mittag_leffler(std::numeric_limits<double>::quiet_NaN(), -1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fbp::mittag_leffler(0.5, std::numeric_limits<double>::quiet_NaN()),
      std::invalid_argument);
}

TEST_CASE("positive arguments that would overflow are rejected") {
  CHECK_THROWS_AS(fbp::mittag_leffler(0.5, 1e7), std::overflow_error);
  CHECK_THROWS_AS(fbp::mittag_leffler(0.25, 1e3), std::overflow_error);
}

TEST_CASE("series respects the term cap") {
  fbp::MlConfig config = fbp::MlConfig::defaults_for(0.5);
  config.max_terms = 3;
  CHECK_THROWS_AS(fbp::mittag_leffler(0.5, -1.0, config), std::runtime_error);
  CHECK_THROWS_AS(fbp::detail::ml_series(0.5, -1.0, 1e-12, 3), std::runtime_error);
}

TEST_CASE("tail expansion reports its truncation bound") {
  double bound = -1.0;
  fbp::detail::ml_asymptotic(0.5, std::pow(37.0, 0.5), &bound);
  CHECK(bound > 0.0);
  CHECK(bound < 1e-12);
}

}  // TEST_SUITE
