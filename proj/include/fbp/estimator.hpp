#pragma once

#include <cstdint>
#include <vector>

#include "fbp/process.hpp"

namespace fbp {

struct MomentSummary {
  double m1 = 0.0;               // sample mean
  double m2 = 0.0;               // sample second moment (mean of squares)
  int sample_size = 0;           // J
  double observation_time = 0.0; // T
};

// Mean and mean-of-squares of a fixed-time cross section. Throws on fewer
// than two values.
MomentSummary sample_moments(const std::vector<int>& values, double observation_time);

// mu, M, N are treated as known; only (lambda, nu) are estimated.
struct KnownParams {
  double mu = 0.0;
  int capacity = 0;  // N
  int initial = 0;   // M
};

struct SolverOptions {
  double lambda_min = 0.05;
  double lambda_max = 2.0;
  double nu_floor = 0.05;   // guards the Mittag-Leffler evaluation
  double tolerance = 0.05;  // scaled-residual convergence threshold
  int grid = 16;            // coarse scan resolution per axis
  int refine_starts = 3;    // Nelder-Mead restarts from the best grid cells
  int max_iterations = 400; // per restart
};

struct EstimateResult {
  double lambda_hat = 0.0;
  double nu_hat = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;  // objective evaluations spent
  bool converged = false;
};

// Method of moments: minimize the scaled residual
//   || ( (mean(l,n;T) - m1)/max(1,|m1|), (m2'(l,n;T) - m2)/max(1,|m2|) ) ||
// over the box [lambda_min, lambda_max] x [nu_floor, 1] with a deterministic
// grid scan followed by Nelder-Mead refinement. Always returns the best point
// found; `converged` reflects the tolerance test.
EstimateResult solve_moment_equations(const MomentSummary& summary,
                                      const KnownParams& known,
                                      const SolverOptions& options = {});

// Observation time T at which E_nu(-(lambda+mu) T^nu) = 0.3 for the given
// parameters: mid-transient, where both moment equations carry information.
double default_observation_time(const ProcessParams& params);

struct ParamStats {
  double mean = 0.0;
  double mad = 0.0;           // mean absolute deviation about the mean
  double mse = 0.0;           // mean squared error about the truth
  double percent_bias = 0.0;  // |mean - truth| / truth * 100
  double cv = 0.0;            // population sd / mean * 100
};

// Population (1/K) conventions throughout, so mse = variance + bias^2 exactly.
ParamStats compute_param_stats(const std::vector<double>& estimates, double truth);

struct ReplicateRecord {
  int replicate = 0;
  double lambda_hat = 0.0;
  double nu_hat = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct McStudyReport {
  ProcessParams true_params;
  int paths_per_replicate = 0;  // J
  int replicates = 0;           // K
  double observation_time = 0.0;
  std::uint64_t seed = 0;
  ParamStats lambda;
  ParamStats nu;
  int failures = 0;
  std::vector<ReplicateRecord> records;
};

// K replicates of: J marginal draws at T -> sample moments -> (lambda, nu)
// estimate. Replicate i, path j draws from stream (seed, i*J + j), so the
// report is bit-identical for any worker count. Aggregates cover converged
// replicates only; throws if more than 20% fail.
McStudyReport run_mc_study(const ProcessParams& true_params, int paths_per_replicate,
                           int replicates, double observation_time, std::uint64_t seed,
                           int threads = 1,
                           const SolverOptions& options = {});

}  // namespace fbp
