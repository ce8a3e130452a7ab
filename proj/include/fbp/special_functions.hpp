#pragma once

namespace fbp {

// Evaluation controls for mittag_leffler().
//
// The evaluator switches between three regimes on the negative axis:
// a Taylor series near the origin, a spectral integral in the mid range,
// and the inverse-power tail expansion for |z| >= asymptotic_crossover.
// The usable crossover scales like c^nu, so prefer defaults_for(nu) over
// the raw default when the order is known.
struct MlConfig {
  double series_tolerance = 1e-12;   // relative term cutoff for the series
  double asymptotic_crossover = 37.0;  // |z| at which the tail expansion takes over
  // Series length cap. Positive-z sums peak near z^(1/nu)/nu terms, so the
  // default is sized for the whole non-overflowing domain down to nu ~ 0.05;
  // convergence exits the loop long before the cap in typical calls.
  int max_terms = 20000;

  static MlConfig defaults_for(double nu);
};

// One-parameter Mittag-Leffler function E_nu(z) = sum_r z^r / Gamma(nu r + 1)
// for nu in (0,1]. Supports the whole negative axis and positive z up to the
// point where the result would overflow. Relative error on z <= 0 is bounded
// by max(series_tolerance, truncation bound of the tail expansion); with the
// per-order defaults that is ~1e-11 everywhere.
//
// Throws std::invalid_argument for bad nu/z/config, std::overflow_error when
// E_nu(z) exceeds double range (large positive z), std::runtime_error if the
// series fails to converge within max_terms.
double mittag_leffler(double nu, double z, const MlConfig& cfg);
double mittag_leffler(double nu, double z);  // uses MlConfig::defaults_for(nu)

// Leading tail term of E_nu(-x): 1 / (Gamma(1-nu) * x), nu in (0,1), x > 0.
double ml_leading_asymptotic(double nu, double x);

namespace detail {

// Individual regimes, exposed for consistency tests. Each computes E_nu(z)
// (series) or E_nu(-x), x > 0 (integral / asymptotic) without regime checks.
double ml_series(double nu, double z, double tol, int max_terms);
double ml_integral(double nu, double x);
double ml_asymptotic(double nu, double x, double* truncation_bound = nullptr);

// Upper end of the series regime for order nu (7^nu: keeps the alternating
// sum's cancellation below ~e^7, i.e. ~1e-12 achievable accuracy).
double series_cutoff(double nu);

}  // namespace detail
}  // namespace fbp
