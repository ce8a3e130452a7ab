#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fbp/estimator.hpp"
#include "fbp/moments.hpp"
#include "fbp/special_functions.hpp"

namespace {

const fbp::KnownParams kKnown{0.5, 500, 30};

fbp::MomentSummary exact_summary(const fbp::ProcessParams& params, double t) {
  fbp::MomentSummary summary;
  summary.m1 = fbp::theoretical_mean(params, t);
  summary.m2 = fbp::theoretical_second_moment(params, t);
  summary.sample_size = 1000;
  summary.observation_time = t;
  return summary;
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("sample moments") {
  const fbp::MomentSummary two = fbp::sample_moments({3, 5}, 2.0);
  CHECK(two.m1 == 4.0);
  CHECK(two.m2 == 17.0);
  CHECK(two.sample_size == 2);
  CHECK(two.observation_time == 2.0);
  const fbp::MomentSummary flat = fbp::sample_moments({4, 4, 4}, 1.0);
  CHECK(flat.m1 == 4.0);
  CHECK(flat.m2 == 16.0);
  CHECK_THROWS_AS(fbp::sample_moments({3}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fbp::sample_moments({3, 5}, 0.0), std::invalid_argument);
}

TEST_CASE("default observation time sits mid-transient") {
  const fbp::ProcessParams table{0.3, 0.5, 0.8, 500, 30};
  const double t = fbp::default_observation_time(table);
  CHECK(t == doctest::Approx(1.8754508335131694).epsilon(1e-12));
  for (const double nu : {0.4, 0.8, 1.0}) {
    fbp::ProcessParams params = table;
    params.nu = nu;
    const double when = fbp::default_observation_time(params);
    CAPTURE(nu);
    CHECK(fbp::mittag_leffler(nu, -0.8 * std::pow(when, nu)) ==
          doctest::Approx(0.3).epsilon(1e-10));
  }
}

TEST_CASE("exact moments are inverted to the generating parameters") {
  const struct {
    double lambda, nu;
  } cases[] = {{0.3, 0.8}, {0.5, 0.4}, {0.6, 0.9}, {0.9, 0.5}};
  for (const auto& c : cases) {
    CAPTURE(c.lambda);
    CAPTURE(c.nu);
    const fbp::ProcessParams params{c.lambda, 0.5, c.nu, 500, 30};
    const double t = fbp::default_observation_time(params);
    const fbp::EstimateResult result =
        fbp::solve_moment_equations(exact_summary(params, t), kKnown);
    CHECK(result.converged);
    CHECK(result.iterations > 0);
    CHECK(std::abs(result.lambda_hat - c.lambda) < 1e-6);
    CHECK(std::abs(result.nu_hat - c.nu) < 1e-6);
    CHECK(result.residual_norm < 1e-8);
  }
}

TEST_CASE("order-one boundary is recoverable") {
  const fbp::ProcessParams params{0.4, 0.5, 1.0, 500, 30};
  const fbp::EstimateResult result = fbp::solve_moment_equations(
      exact_summary(params, fbp::default_observation_time(params)), kKnown);
  CHECK(result.converged);
  CHECK(std::abs(result.lambda_hat - 0.4) < 1e-6);
  CHECK(std::abs(result.nu_hat - 1.0) < 1e-6);
}

TEST_CASE("estimates respect the search box") {
  const fbp::ProcessParams params{0.3, 0.5, 0.8, 500, 30};
  const fbp::EstimateResult result = fbp::solve_moment_equations(
      exact_summary(params, 1.5), kKnown);
  CHECK(result.lambda_hat >= 0.05);
  CHECK(result.lambda_hat <= 2.0);
  CHECK(result.nu_hat >= 0.05);
  CHECK(result.nu_hat <= 1.0);
}

TEST_CASE("impossible moments are reported as non-converged") {
  // Mean 50 on [0, 500] caps the variance at 22500; demanding ten times
  // that leaves residuals no parameter pair can cancel.
  fbp::MomentSummary summary;
  summary.m1 = 50.0;
  summary.m2 = 240000.0;
  summary.sample_size = 100;
  summary.observation_time = 1.0;
  const fbp::EstimateResult result = fbp::solve_moment_equations(summary, kKnown);
  CHECK_FALSE(result.converged);
  CHECK(result.residual_norm > 0.05);
}

TEST_CASE("summary and option validation") {
  fbp::MomentSummary summary;
  summary.m1 = 40.0;
  summary.m2 = 1700.0;
  summary.sample_size = 100;
  summary.observation_time = 1.0;

  fbp::MomentSummary bad = summary;
  bad.sample_size = 1;
  CHECK_THROWS_AS(fbp::solve_moment_equations(bad, kKnown), std::invalid_argument);
  bad = summary;
  bad.observation_time = 0.0;
  CHECK_THROWS_AS(fbp::solve_moment_equations(bad, kKnown), std::invalid_argument);
  bad = summary;
  bad.m2 = 1500.0;  // below m1^2
  CHECK_THROWS_AS(fbp::solve_moment_equations(bad, kKnown), std::invalid_argument);

  CHECK_THROWS_AS(
      fbp::solve_moment_equations(summary, fbp::KnownParams{0.0, 500, 30}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fbp::solve_moment_equations(summary, fbp::KnownParams{0.5, 500, 0}),
      std::invalid_argument);

  fbp::SolverOptions options;
  options.lambda_min = 2.0;
  options.lambda_max = 1.0;
  CHECK_THROWS_AS(fbp::solve_moment_equations(summary, kKnown, options),
                  std::invalid_argument);
  options = {};
  options.tolerance = 0.0;
  CHECK_THROWS_AS(fbp::solve_moment_equations(summary, kKnown, options),
                  std::invalid_argument);
}

TEST_CASE("parameter statistics") {
  const fbp::ParamStats constant =
      fbp::compute_param_stats({0.31, 0.31, 0.31}, 0.3);
  CHECK(constant.mean == doctest::Approx(0.31).epsilon(1e-14));
  CHECK(constant.mad == doctest::Approx(0.0).scale(1.0));
  CHECK(constant.cv == doctest::Approx(0.0).scale(1.0));
  CHECK(constant.mse == doctest::Approx(1e-4).epsilon(1e-10));
  CHECK(constant.percent_bias == doctest::Approx(10.0 / 3.0).epsilon(1e-12));

  // Dispersion accounting: mse = population variance + bias^2.
  const fbp::ParamStats spread = fbp::compute_param_stats({0.2, 0.5}, 0.25);
  CHECK(spread.mean == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(spread.mad == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(spread.mse == doctest::Approx(0.0325).epsilon(1e-12));
  const double sd = spread.cv / 100.0 * spread.mean;
  const double bias = spread.mean - 0.25;
  CHECK(spread.mse ==
        doctest::Approx(sd * sd + bias * bias).epsilon(1e-12));

  CHECK_THROWS_AS(fbp::compute_param_stats({}, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(fbp::compute_param_stats({0.3}, 0.0), std::invalid_argument);
}

TEST_CASE("study is reproducible and thread-count invariant") {
  const fbp::ProcessParams params{0.3, 0.5, 0.8, 100, 30};
  const fbp::McStudyReport serial =
      fbp::run_mc_study(params, 40, 6, 1.5, 11, 1);
  const fbp::McStudyReport parallel =
      fbp::run_mc_study(params, 40, 6, 1.5, 11, 4);
  REQUIRE(serial.records.size() == 6);
  REQUIRE(parallel.records.size() == 6);
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].lambda_hat == parallel.records[i].lambda_hat);
    CHECK(serial.records[i].nu_hat == parallel.records[i].nu_hat);
    CHECK(serial.records[i].residual == parallel.records[i].residual);
    CHECK(serial.records[i].replicate == static_cast<int>(i));
  }
  CHECK(serial.lambda.mean == parallel.lambda.mean);
  CHECK(serial.nu.mse == parallel.nu.mse);
  CHECK(serial.observation_time == 1.5);
  CHECK(serial.seed == 11);
}

TEST_CASE("study recovers the generating parameters approximately") {
  const fbp::ProcessParams params{0.3, 0.5, 0.8, 500, 30};
  const fbp::McStudyReport report = fbp::run_mc_study(
      params, 400, 8, fbp::default_observation_time(params), 21, 4);
  CHECK(report.failures == 0);
  CHECK(std::abs(report.lambda.mean - 0.3) < 0.05);
  CHECK(std::abs(report.nu.mean - 0.8) < 0.1);
  for (const fbp::ReplicateRecord& record : report.records) {
    CHECK(record.converged);
    CHECK(record.lambda_hat >= 0.05);
    CHECK(record.lambda_hat <= 2.0);
    CHECK(record.nu_hat >= 0.05);
    CHECK(record.nu_hat <= 1.0);
  }
}

TEST_CASE("study argument validation") {
  const fbp::ProcessParams params{0.3, 0.5, 0.8, 100, 30};
  CHECK_THROWS_AS(fbp::run_mc_study(params, 1, 5, 1.0, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(fbp::run_mc_study(params, 10, 0, 1.0, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(fbp::run_mc_study(params, 10, 5, 0.0, 1, 1),
                  std::invalid_argument);
}

}  // TEST_SUITE
