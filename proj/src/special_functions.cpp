// Mittag-Leffler evaluation: series / spectral integral / tail expansion.
#include "fbp/special_functions.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fbp {
namespace {

constexpr double kSeriesCutoffBase = 7.0;
// exp(z^(1/nu)) must stay below double range for positive arguments
constexpr double kPositiveArgExpCap = 705.0;

void check_order(double nu) {
  if (!(nu > 0.0) || !(nu <= 1.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("mittag_leffler: order nu must lie in (0, 1], got " +
                                std::to_string(nu));
  }
}

void check_config(const MlConfig& cfg) {
  if (!(cfg.series_tolerance > 0.0) || !std::isfinite(cfg.series_tolerance)) {
    throw std::invalid_argument("mittag_leffler: series_tolerance must be positive");
  }
  if (!(cfg.asymptotic_crossover > 0.0) || !std::isfinite(cfg.asymptotic_crossover)) {
    throw std::invalid_argument("mittag_leffler: asymptotic_crossover must be positive");
  }
  if (cfg.max_terms < 2) {
    throw std::invalid_argument("mittag_leffler: max_terms must be at least 2");
  }
}

}  // namespace

MlConfig MlConfig::defaults_for(double nu) {
  check_order(nu);
  MlConfig cfg;
  cfg.asymptotic_crossover = std::pow(37.0, nu);
  return cfg;
}

namespace detail {

double series_cutoff(double nu) { return std::pow(kSeriesCutoffBase, nu); }

double ml_series(double nu, double z, double tol, int max_terms) {
  if (z == 0.0) return 1.0;
  // Kahan-compensated sum of z^r / Gamma(nu r + 1). Powers and gammas are
  // taken directly while they fit in range, then per-term in log space.
  double sum = 1.0;  // r = 0
  double comp = 0.0;
  double zpow = 1.0;
  bool log_mode = false;
  const double log_abs_z = std::log(std::abs(z));
  const bool negative = z < 0.0;
  double prev_mag = 1.0;
  for (int r = 1; r <= max_terms; ++r) {
    const double a = nu * r + 1.0;
    double term;
    if (!log_mode) {
      zpow *= z;
      if (a > 170.0 || std::abs(zpow) > 1e280) {
        log_mode = true;
      } else {
        term = zpow / std::tgamma(a);
      }
    }
    if (log_mode) {
      const double mag = std::exp(r * log_abs_z - std::lgamma(a));
      term = (negative && (r & 1)) ? -mag : mag;
    }
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    const double mag = std::abs(term);
    if (mag <= prev_mag && mag < tol * std::max(std::abs(sum), 1e-300)) {
      return sum;
    }
    prev_mag = mag;
  }
  throw std::runtime_error("mittag_leffler: series did not converge within max_terms");
}

double ml_integral(double nu, double x) {
  // Completely monotone spectral form, valid for all x > 0, 0 < nu < 1:
  //   E_nu(-x) = (x sin(nu pi) / (nu pi)) *
  //              Int_0^inf exp(-q^(1/nu)) / ((q + x cos(nu pi))^2 + (x sin(nu pi))^2) dq
  const double c = boost::math::cos_pi(nu);
  const double s = boost::math::sin_pi(nu);
  const double inv_nu = 1.0 / nu;
  const double xs2 = (x * s) * (x * s);
  auto f = [=](double q) {
    const double d = q + x * c;
    return std::exp(-std::pow(q, inv_nu)) / (d * d + xs2);
  };
  // exp(-q^(1/nu)) < 1.3e-24 beyond 55^nu, far below the integral's tolerance
  const double qmax = std::pow(55.0, nu);
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  double integral;
  // For nu > 1/2 the denominator dips to (x sin(nu pi))^2 at q = -x cos(nu pi),
  // a Lorentzian spike that narrows as nu -> 1. tanh_sinh clusters nodes at the
  // endpoints, so when the spike is narrow relative to the domain, split there
  // to keep it fully resolved. Wide spikes are left alone: the quadrature
  // handles them directly, and splitting near q = 0 (nu just above 1/2) would
  // produce a degenerate subinterval.
  // Both pieces are integrated on intervals anchored at zero: shifting the
  // upper piece keeps the quadrature's node generation well conditioned when
  // the left endpoint is far from the origin.
  const double q_peak = -x * c;
  if (q_peak > 0.0 && q_peak < qmax && x * s < 0.05 * qmax) {
    auto tail = [&](double q) { return f(q_peak + q); };
    integral = integrator.integrate(f, 0.0, q_peak, 1e-12, &err) +
               integrator.integrate(tail, 0.0, qmax - q_peak, 1e-12, &err);
  } else {
    integral = integrator.integrate(f, 0.0, qmax, 1e-12, &err);
  }
  return (s * x / (std::numbers::pi * nu)) * integral;
}

double ml_asymptotic(double nu, double x, double* truncation_bound) {
  // E_nu(-x) ~ sum_{k>=1} (-1)^(k+1) sin(pi nu k) Gamma(nu k) / (pi x^k),
  // truncated at the smallest term. 1/Gamma(1 - nu k) is written via the
  // reflection formula so coefficients at integer nu k vanish exactly.
  // Truncation control runs on the envelope Gamma(nu k) / (pi x^k): the
  // sin factor oscillates through near-zero dips, so comparing raw term
  // magnitudes would misread a post-dip rebound as divergence onset.
  double sum = 0.0;
  double prev_env = std::numeric_limits<double>::infinity();
  double bound = 0.0;
  double xpow = 1.0;
  const double log_x = std::log(x);
  for (int k = 1; k <= 2000; ++k) {
    const double nk = nu * k;
    double env;
    if (nk <= 170.0 && xpow < 1e280) {
      xpow *= x;
      env = std::tgamma(nk) / (std::numbers::pi * xpow);
    } else {
      env = std::exp(std::lgamma(nk) - k * log_x - std::log(std::numbers::pi));
    }
    if (env >= prev_env) {  // divergence onset: stop before the smallest term
      bound = env;
      break;
    }
    const double sp = boost::math::sin_pi(nk);
    sum += ((k & 1) ? 1.0 : -1.0) * sp * env;
    bound = env;
    if (env < 1e-16 * std::abs(sum)) break;
    prev_env = env;
  }
  if (truncation_bound) *truncation_bound = bound;
  return sum;
}

}  // namespace detail

double mittag_leffler(double nu, double z, const MlConfig& cfg) {
  check_order(nu);
  check_config(cfg);
  if (!std::isfinite(z)) {
    throw std::invalid_argument("mittag_leffler: argument must be finite");
  }
  if (z == 0.0) return 1.0;
  if (nu == 1.0) {
    if (z > 709.0) throw std::overflow_error("mittag_leffler: exp overflow");
    return std::exp(z);
  }
  if (z > 0.0) {
    if (std::pow(z, 1.0 / nu) > kPositiveArgExpCap) {
      throw std::overflow_error("mittag_leffler: E_nu(z) overflows for z = " +
                                std::to_string(z));
    }
    return detail::ml_series(nu, z, cfg.series_tolerance, cfg.max_terms);
  }
  const double x = -z;
  if (x <= std::min(detail::series_cutoff(nu), cfg.asymptotic_crossover)) {
    return detail::ml_series(nu, z, cfg.series_tolerance, cfg.max_terms);
  }
  if (x >= cfg.asymptotic_crossover) {
    return detail::ml_asymptotic(nu, x);
  }
  return detail::ml_integral(nu, x);
}

double mittag_leffler(double nu, double z) {
  return mittag_leffler(nu, z, MlConfig::defaults_for(nu));
}

double ml_leading_asymptotic(double nu, double x) {
  if (!(nu > 0.0) || !(nu < 1.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("ml_leading_asymptotic: nu must lie in (0, 1)");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("ml_leading_asymptotic: x must be positive");
  }
  return 1.0 / (std::tgamma(1.0 - nu) * x);
}

}  // namespace fbp
