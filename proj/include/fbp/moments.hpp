#pragma once

#include <utility>
#include <vector>

#include "fbp/process.hpp"

namespace fbp {

struct MomentPoint {
  double t;
  double mean;
  double variance;
  double second_moment;
};

struct DependenceFit {
  double exponent;   // decay order d of |corr| ~ c / t^d
  double intercept;  // log c
  double r_squared;
};

// First- and second-order transients. Writing r = lambda + mu and
// e_a = E_nu(-a r t^nu):
//   mean      = (M - N xi) e_1 + N xi
//   variance  = N xi (1 - xi) + B e_1 + A e_2 - (M - N xi)^2 e_1^2
// with A = xi^2 N(N-1) - 2 xi M(N-1) + M(M-1) and
//      B = 2 xi^2 N - xi(N + 2M) + M.
// The variance cancels exactly at t = 0; roundoff residue inside
// (-1e-9 N^2, 0) is clamped to zero, anything lower throws.
double theoretical_mean(const ProcessParams& params, double t);
double theoretical_variance(const ProcessParams& params, double t);

// variance + mean^2; the _direct form evaluates the same moment from its own
// closed form. Both agree to 1e-9 relative.
double theoretical_second_moment(const ProcessParams& params, double t);
double theoretical_second_moment_direct(const ProcessParams& params, double t);

// Equilibrium-start product moment E[N(s) N(t)]:
//   (N xi)^2 + N xi (1 - xi) E_nu(-r (t-s)^nu),  0 <= s <= t.
double stationary_product_moment(const ProcessParams& params, double s, double t);

// Transient-mean autocovariance, 0 <= s <= t:
//   N xi(1-xi) E_{t-s} - (M-N xi)^2 E_s E_t - (M-N xi) N xi (E_s + E_t)
// where E_u = E_nu(-r u^nu). At fixed s this tends not to zero but to
// covariance_large_t_limit; subtract it before comparing against the pure
// power-law asymptotics.
double covariance(const ProcessParams& params, double s, double t);
double covariance_large_t_limit(const ProcessParams& params, double s);

// covariance / sqrt(variance(s) variance(t)); requires s, t > 0. Mixes the
// transient covariance with transient variances exactly as specified; at
// fixed s and large t it approaches a constant, so decay diagnostics use
// asymptotic_correlation instead.
double correlation(const ProcessParams& params, double s, double t);

// Leading large-t power laws (nu < 1 only; the coefficient 1/Gamma(1-nu)
// vanishes as nu -> 1 and the decay stops being polynomial):
//   asymptotic_variance   = (A/2 + B) / (Gamma(1-nu) r t^nu)
//   asymptotic_covariance = [N xi(1-xi) - (M-N xi)^2 E_s - (M-N xi) N xi]
//                           / (Gamma(1-nu) r t^nu)
// The stationary constant N xi(1-xi) of the exact variance is deliberately
// absent: the comparison oracle is (exact variance - stationary limit).
double asymptotic_variance(const ProcessParams& params, double t);
double asymptotic_covariance(const ProcessParams& params, double s, double t);

// asymptotic_covariance / sqrt(theoretical_variance(s) * asymptotic_variance(t)):
// decays as c(s)/t^(nu/2), the long-range-dependence diagnostic. Requires
// asymptotic_variance(t) > 0 (true away from the centered start M = N xi).
double asymptotic_correlation(const ProcessParams& params, double s, double t);

// Increment process Z(t) = N(t + delta) - N(t). Exact four-term covariance
// (the non-decaying covariance constant cancels):
//   cov(s+d, t+d) + cov(s, t) - cov(s+d, t) - cov(s, t+d),  s + delta <= t.
double fbn_covariance(const ProcessParams& params, double s, double t, double delta);

// fbn_covariance normalized by the power-law increment variance
// 2|D| / (Gamma(1-nu) r u^nu), D = A/2 + B + 2 (M-N xi) N xi; decays as
// c/t^(1+nu/2), the short-range-dependence diagnostic.
double fbn_asymptotic_correlation(const ProcessParams& params, double s, double t,
                                  double delta);

// Ordinary least squares of log|corr| on log t; exponent = -slope.
// Requires >= 3 points, positive coordinates, non-degenerate t values.
DependenceFit fit_decay_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace fbp
