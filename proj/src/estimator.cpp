#include "fbp/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbp/moments.hpp"
#include "fbp/parallel.hpp"
#include "fbp/special_functions.hpp"

namespace fbp {

namespace {

struct Objective {
  const MomentSummary& summary;
  const KnownParams& known;
  const SolverOptions& options;
  mutable int evaluations = 0;

  double scale1() const { return std::max(1.0, std::abs(summary.m1)); }
  double scale2() const { return std::max(1.0, std::abs(summary.m2)); }

  double residual(double lambda, double nu) const {
    ProcessParams p;
    p.lambda = lambda;
    p.mu = known.mu;
    p.nu = nu;
    p.capacity = known.capacity;
    p.initial = known.initial;
    const double mu1 = theoretical_mean(p, summary.observation_time);
    const double mu2 = theoretical_second_moment(p, summary.observation_time);
    const double r1 = (mu1 - summary.m1) / scale1();
    const double r2 = (mu2 - summary.m2) / scale2();
    return std::sqrt(r1 * r1 + r2 * r2);
  }

  // Out-of-box points are evaluated at their clamp with a quadratic penalty,
  // keeping the surface continuous so Nelder-Mead slides back inside.
  double operator()(double lambda, double nu) const {
    ++evaluations;
    const double cl = std::clamp(lambda, options.lambda_min, options.lambda_max);
    const double cn = std::clamp(nu, options.nu_floor, 1.0);
    const double span_l = options.lambda_max - options.lambda_min;
    const double span_n = 1.0 - options.nu_floor;
    const double dl = (lambda - cl) / span_l;
    const double dn = (nu - cn) / span_n;
    double value;
    try {
      value = residual(cl, cn);
    } catch (const std::exception&) {
      value = 1e30;  // non-finite moment evaluation: repel the solver
    }
    if (!std::isfinite(value)) value = 1e30;
    return value + 100.0 * (dl * dl + dn * dn);
  }
};

struct Vertex {
  double lambda;
  double nu;
  double value;
};

// Textbook Nelder-Mead on (lambda, nu), deterministic for fixed inputs.
Vertex nelder_mead(const Objective& objective, double lambda0, double nu0,
                   const SolverOptions& options) {
  const double step_l = 0.05 * (options.lambda_max - options.lambda_min);
  const double step_n = 0.05 * (1.0 - options.nu_floor);
  std::array<Vertex, 3> simplex;
  auto make = [&](double l, double n) { return Vertex{l, n, objective(l, n)}; };
  simplex[0] = make(lambda0, nu0);
  simplex[1] = make(
      lambda0 + (lambda0 + step_l > options.lambda_max ? -step_l : step_l), nu0);
  simplex[2] = make(lambda0, nu0 + (nu0 + step_n > 1.0 ? -step_n : step_n));

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
    const Vertex& best = simplex[0];
    const Vertex& worst = simplex[2];
    const double diameter =
        std::max(std::abs(simplex[1].lambda - best.lambda) +
                     std::abs(simplex[1].nu - best.nu),
                 std::abs(worst.lambda - best.lambda) + std::abs(worst.nu - best.nu));
    if (diameter < 1e-11 && worst.value - best.value < 1e-15 * std::max(1.0, best.value)) {
      break;
    }
    const double cl = 0.5 * (simplex[0].lambda + simplex[1].lambda);
    const double cn = 0.5 * (simplex[0].nu + simplex[1].nu);
    const Vertex reflected = make(cl + (cl - worst.lambda), cn + (cn - worst.nu));
    if (reflected.value < best.value) {
      const Vertex expanded = make(cl + 2.0 * (cl - worst.lambda),
                                   cn + 2.0 * (cn - worst.nu));
      simplex[2] = expanded.value < reflected.value ? expanded : reflected;
      continue;
    }
    if (reflected.value < simplex[1].value) {
      simplex[2] = reflected;
      continue;
    }
    const Vertex contracted = make(cl + 0.5 * (worst.lambda - cl),
                                   cn + 0.5 * (worst.nu - cn));
    if (contracted.value < worst.value) {
      simplex[2] = contracted;
      continue;
    }
    for (std::size_t i = 1; i < simplex.size(); ++i) {  // shrink toward best
      simplex[i] = make(simplex[0].lambda + 0.5 * (simplex[i].lambda - simplex[0].lambda),
                        simplex[0].nu + 0.5 * (simplex[i].nu - simplex[0].nu));
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
  return simplex[0];
}

void check_summary(const MomentSummary& summary) {
  if (summary.sample_size < 2) {
    throw std::invalid_argument("moment summary needs sample_size >= 2");
  }
  if (!(summary.observation_time > 0.0) || !std::isfinite(summary.observation_time)) {
    throw std::invalid_argument("observation time must be positive and finite");
  }
  if (!std::isfinite(summary.m1) || !std::isfinite(summary.m2)) {
    throw std::invalid_argument("moments must be finite");
  }
  if (summary.m2 < summary.m1 * summary.m1 - 1e-9) {
    throw std::invalid_argument("m2 < m1^2: not a valid moment pair");
  }
}

void check_options(const SolverOptions& options) {
  if (!(options.lambda_min > 0.0) || !(options.lambda_max > options.lambda_min)) {
    throw std::invalid_argument("lambda bounds must satisfy 0 < lambda_min < lambda_max");
  }
  if (!(options.nu_floor > 0.0) || !(options.nu_floor < 1.0)) {
    throw std::invalid_argument("nu_floor must lie in (0, 1)");
  }
  if (!(options.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (options.grid < 2 || options.refine_starts < 1 || options.max_iterations < 1) {
    throw std::invalid_argument("grid, refine_starts, max_iterations must be positive");
  }
}

}  // namespace

MomentSummary sample_moments(const std::vector<int>& values, double observation_time) {
  if (values.size() < 2) {
    throw std::invalid_argument("sample_moments needs at least two values");
  }
  if (!(observation_time > 0.0) || !std::isfinite(observation_time)) {
    throw std::invalid_argument("observation time must be positive and finite");
  }
  double sum = 0.0, sum_sq = 0.0;
  for (const int v : values) {
    const double x = static_cast<double>(v);
    sum += x;
    sum_sq += x * x;
  }
  const double j = static_cast<double>(values.size());
  return {sum / j, sum_sq / j, static_cast<int>(values.size()), observation_time};
}

EstimateResult solve_moment_equations(const MomentSummary& summary,
                                      const KnownParams& known,
                                      const SolverOptions& options) {
  check_summary(summary);
  check_options(options);
  if (!(known.mu > 0.0) || !std::isfinite(known.mu)) {
    throw std::invalid_argument("known mu must be positive and finite");
  }
  if (known.capacity < 1 || known.initial < 1 || known.initial > known.capacity) {
    throw std::invalid_argument("known M, N must satisfy 1 <= M <= N");
  }

  Objective objective{summary, known, options};

  // Coarse scan over cell midpoints, keeping the best few as refine seeds.
  struct Seed {
    double lambda, nu, value;
  };
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(options.grid) * options.grid);
  for (int i = 0; i < options.grid; ++i) {
    const double l = options.lambda_min + (i + 0.5) * (options.lambda_max -
                                                       options.lambda_min) /
                                              options.grid;
    for (int j = 0; j < options.grid; ++j) {
      const double n = options.nu_floor + (j + 0.5) * (1.0 - options.nu_floor) /
                                              options.grid;
      seeds.push_back({l, n, objective(l, n)});
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.nu < b.nu;
  });

  Vertex best{seeds.front().lambda, seeds.front().nu, seeds.front().value};
  const int starts = std::min<int>(options.refine_starts, static_cast<int>(seeds.size()));
  for (int k = 0; k < starts; ++k) {
    const Vertex candidate = nelder_mead(objective, seeds[k].lambda, seeds[k].nu, options);
    if (candidate.value < best.value) best = candidate;
  }

  EstimateResult result;
  result.lambda_hat = std::clamp(best.lambda, options.lambda_min, options.lambda_max);
  result.nu_hat = std::clamp(best.nu, options.nu_floor, 1.0);
  result.residual_norm = objective.residual(result.lambda_hat, result.nu_hat);
  result.iterations = objective.evaluations;
  result.converged = result.residual_norm <= options.tolerance;
  return result;
}

double default_observation_time(const ProcessParams& params) {
  params.validate();
  // Solve E_nu(-x) = 0.3 by bisection (E is strictly decreasing), then unwind
  // x = (lambda+mu) T^nu.
  double lo = 0.0, hi = 1.0;
  while (mittag_leffler(params.nu, -hi) > 0.3) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mittag_leffler(params.nu, -mid) > 0.3 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return std::pow(x / params.rate_sum(), 1.0 / params.nu);
}

ParamStats compute_param_stats(const std::vector<double>& estimates, double truth) {
  if (estimates.empty()) {
    throw std::invalid_argument("no estimates to aggregate");
  }
  if (!(truth > 0.0)) {
    throw std::invalid_argument("truth must be positive");
  }
  const double k = static_cast<double>(estimates.size());
  double sum = 0.0;
  for (const double e : estimates) sum += e;
  ParamStats stats;
  stats.mean = sum / k;
  double abs_dev = 0.0, sq_dev = 0.0, sq_err = 0.0;
  for (const double e : estimates) {
    abs_dev += std::abs(e - stats.mean);
    sq_dev += (e - stats.mean) * (e - stats.mean);
    sq_err += (e - truth) * (e - truth);
  }
  stats.mad = abs_dev / k;
  stats.mse = sq_err / k;
  stats.percent_bias = std::abs(stats.mean - truth) / truth * 100.0;
  stats.cv = stats.mean == 0.0 ? 0.0 : std::sqrt(sq_dev / k) / stats.mean * 100.0;
  return stats;
}

McStudyReport run_mc_study(const ProcessParams& true_params, int paths_per_replicate,
                           int replicates, double observation_time, std::uint64_t seed,
                           int threads, const SolverOptions& options) {
  true_params.validate();
  check_options(options);
  if (paths_per_replicate < 2) {
    throw std::invalid_argument("paths_per_replicate must be at least 2");
  }
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be at least 1");
  }
  if (!(observation_time > 0.0) || !std::isfinite(observation_time)) {
    throw std::invalid_argument("observation time must be positive and finite");
  }

  const KnownParams known{true_params.mu, true_params.capacity, true_params.initial};
  std::vector<ReplicateRecord> records(static_cast<std::size_t>(replicates));
  parallel_for(replicates, threads, [&](int i) {
    std::vector<int> values(static_cast<std::size_t>(paths_per_replicate));
    for (int j = 0; j < paths_per_replicate; ++j) {
      RngStream stream(seed, static_cast<std::uint64_t>(i) * paths_per_replicate + j);
      values[static_cast<std::size_t>(j)] =
          sample_fbp_marginal(true_params, observation_time, stream);
    }
    const MomentSummary summary = sample_moments(values, observation_time);
    const EstimateResult estimate = solve_moment_equations(summary, known, options);
    records[static_cast<std::size_t>(i)] = {i, estimate.lambda_hat, estimate.nu_hat,
                                            estimate.residual_norm, estimate.converged};
  });

  McStudyReport report;
  report.true_params = true_params;
  report.paths_per_replicate = paths_per_replicate;
  report.replicates = replicates;
  report.observation_time = observation_time;
  report.seed = seed;
  report.records = std::move(records);
  std::vector<double> lambdas, nus;
  lambdas.reserve(report.records.size());
  nus.reserve(report.records.size());
  for (const ReplicateRecord& r : report.records) {
    if (r.converged) {
      lambdas.push_back(r.lambda_hat);
      nus.push_back(r.nu_hat);
    } else {
      ++report.failures;
    }
  }
  if (report.failures * 5 > replicates) {
    throw std::runtime_error("more than 20% of replicates failed to converge");
  }
  report.lambda = compute_param_stats(lambdas, true_params.lambda);
  report.nu = compute_param_stats(nus, true_params.nu);
  return report;
}

}  // namespace fbp
