#include "fbp/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fbp/special_functions.hpp"

namespace fbp {

namespace {

void check_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(what) + " must be nonnegative and finite");
  }
}

void check_order_pair(double s, double t) {
  check_time(s, "s");
  check_time(t, "t");
  if (s > t) throw std::invalid_argument("require s <= t");
}

// E_nu(-r u^nu) with the t = 0 case short-circuited (0^nu underflow-safe).
double relax(const ProcessParams& p, double u) {
  if (u == 0.0) return 1.0;
  return mittag_leffler(p.nu, -p.rate_sum() * std::pow(u, p.nu));
}

double coef_a(const ProcessParams& p) {
  const double xi = p.xi();
  const double n = p.capacity, m = p.initial;
  return xi * xi * n * (n - 1.0) - 2.0 * xi * m * (n - 1.0) + m * (m - 1.0);
}

double coef_b(const ProcessParams& p) {
  const double xi = p.xi();
  const double n = p.capacity, m = p.initial;
  return 2.0 * xi * xi * n - xi * (n + 2.0 * m) + m;
}

double centered_start(const ProcessParams& p) {
  return p.initial - p.capacity * p.xi();
}

void require_fractional(const ProcessParams& p) {
  if (p.nu >= 1.0) {
    throw std::invalid_argument("asymptotic power laws require nu < 1");
  }
}

// 1 / (Gamma(1-nu) r u^nu): leading coefficient of E_nu(-r u^nu) at large u.
double power_term(const ProcessParams& p, double u) {
  return ml_leading_asymptotic(p.nu, p.rate_sum() * std::pow(u, p.nu));
}

}  // namespace

double theoretical_mean(const ProcessParams& params, double t) {
  params.validate();
  check_time(t, "t");
  const double nxi = params.capacity * params.xi();
  return (params.initial - nxi) * relax(params, t) + nxi;
}

double theoretical_variance(const ProcessParams& params, double t) {
  params.validate();
  check_time(t, "t");
  const double xi = params.xi();
  const double nxi = params.capacity * xi;
  const double dev = params.initial - nxi;
  const double e1 = relax(params, t);
  const double e2 = t == 0.0 ? 1.0
                             : mittag_leffler(params.nu, -2.0 * params.rate_sum() *
                                                             std::pow(t, params.nu));
  const double value =
      nxi * (1.0 - xi) + coef_b(params) * e1 + coef_a(params) * e2 - dev * dev * e1 * e1;
  if (value < 0.0) {
    const double cap = static_cast<double>(params.capacity);
    if (value > -1e-9 * cap * cap) return 0.0;  // roundoff residue of the t=0 cancellation
    throw std::runtime_error("variance evaluated materially negative");
  }
  return value;
}

double theoretical_second_moment(const ProcessParams& params, double t) {
  const double mean = theoretical_mean(params, t);
  return theoretical_variance(params, t) + mean * mean;
}

double theoretical_second_moment_direct(const ProcessParams& params, double t) {
  params.validate();
  check_time(t, "t");
  const double xi = params.xi();
  const double nxi = params.capacity * xi;
  const double dev = params.initial - nxi;
  const double e1 = relax(params, t);
  const double e2 = t == 0.0 ? 1.0
                             : mittag_leffler(params.nu, -2.0 * params.rate_sum() *
                                                             std::pow(t, params.nu));
  return nxi * (1.0 - xi) + nxi * nxi + (coef_b(params) + 2.0 * nxi * dev) * e1 +
         coef_a(params) * e2;
}

double stationary_product_moment(const ProcessParams& params, double s, double t) {
  params.validate();
  check_order_pair(s, t);
  const double xi = params.xi();
  const double nxi = params.capacity * xi;
  return nxi * nxi + nxi * (1.0 - xi) * relax(params, t - s);
}

double covariance(const ProcessParams& params, double s, double t) {
  params.validate();
  check_order_pair(s, t);
  const double xi = params.xi();
  const double nxi = params.capacity * xi;
  const double dev = params.initial - nxi;
  const double es = relax(params, s);
  const double et = relax(params, t);
  return nxi * (1.0 - xi) * relax(params, t - s) - dev * dev * es * et -
         dev * nxi * (es + et);
}

double covariance_large_t_limit(const ProcessParams& params, double s) {
  params.validate();
  check_time(s, "s");
  return -centered_start(params) * params.capacity * params.xi() * relax(params, s);
}

double correlation(const ProcessParams& params, double s, double t) {
  params.validate();
  check_order_pair(s, t);
  if (!(s > 0.0)) throw std::invalid_argument("correlation requires s > 0");
  const double vs = theoretical_variance(params, s);
  const double vt = theoretical_variance(params, t);
  if (!(vs > 0.0) || !(vt > 0.0)) {
    throw std::invalid_argument("correlation requires positive variances");
  }
  return covariance(params, s, t) / std::sqrt(vs * vt);
}

double asymptotic_variance(const ProcessParams& params, double t) {
  params.validate();
  require_fractional(params);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be positive and finite");
  }
  return (0.5 * coef_a(params) + coef_b(params)) * power_term(params, t);
}

double asymptotic_covariance(const ProcessParams& params, double s, double t) {
  params.validate();
  require_fractional(params);
  check_order_pair(s, t);
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const double xi = params.xi();
  const double nxi = params.capacity * xi;
  const double dev = params.initial - nxi;
  const double bracket = nxi * (1.0 - xi) - dev * dev * relax(params, s) - dev * nxi;
  return bracket * power_term(params, t);
}

double asymptotic_correlation(const ProcessParams& params, double s, double t) {
  if (!(s > 0.0)) throw std::invalid_argument("asymptotic_correlation requires s > 0");
  const double vs = theoretical_variance(params, s);
  const double vt = asymptotic_variance(params, t);
  if (!(vs > 0.0) || !(vt > 0.0)) {
    throw std::runtime_error(
        "asymptotic_correlation requires positive exact and asymptotic variances");
  }
  return asymptotic_covariance(params, s, t) / std::sqrt(vs * vt);
}

double fbn_covariance(const ProcessParams& params, double s, double t, double delta) {
  params.validate();
  check_time(delta, "delta");
  check_time(s, "s");
  check_time(t, "t");
  if (s + delta > t) throw std::invalid_argument("require s + delta <= t");
  if (delta == 0.0) return 0.0;
  return covariance(params, s + delta, t + delta) + covariance(params, s, t) -
         covariance(params, s + delta, t) - covariance(params, s, t + delta);
}

double fbn_asymptotic_correlation(const ProcessParams& params, double s, double t,
                                  double delta) {
  params.validate();
  require_fractional(params);
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  const double d = 0.5 * coef_a(params) + coef_b(params) +
                   2.0 * centered_start(params) * params.capacity * params.xi();
  if (d == 0.0) {
    throw std::runtime_error("degenerate increment-variance normalization");
  }
  const double vz_s = 2.0 * std::abs(d) * power_term(params, s);
  const double vz_t = 2.0 * std::abs(d) * power_term(params, t);
  return fbn_covariance(params, s, t, delta) / std::sqrt(vz_s * vz_t);
}

DependenceFit fit_decay_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("decay fit needs at least 3 points");
  }
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [t, corr] : points) {
    if (!(t > 0.0) || !(corr > 0.0)) {
      throw std::invalid_argument("decay fit needs positive t and correlation values");
    }
    logs.emplace_back(std::log(t), std::log(corr));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("decay fit needs at least two distinct t values");
  }
  const double slope = sxy / sxx;
  DependenceFit fit;
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  if (fit.r_squared > 1.0) fit.r_squared = 1.0;
  if (fit.r_squared < 0.0) fit.r_squared = 0.0;
  return fit;
}

}  // namespace fbp
