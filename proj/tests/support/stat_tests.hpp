#pragma once

// Shared statistical assertions for the test suites: chi-square goodness of
// fit (one- and two-sample, with small-cell pooling) and a one-sample
// Kolmogorov-Smirnov test. All return p-values; callers pick the threshold.

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace stat_tests {

// Merge adjacent cells until every pooled expected count reaches
// `min_expected`; an undersized trailing remainder folds into the last cell.
inline void pool_cells(std::vector<double>& observed, std::vector<double>& expected,
                       double min_expected = 5.0) {
  std::vector<double> obs_out, exp_out;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    o += observed[i];
    e += expected[i];
    if (e >= min_expected) {
      obs_out.push_back(o);
      exp_out.push_back(e);
      o = 0.0;
      e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_out.empty()) {
      obs_out.push_back(o);
      exp_out.push_back(e);
    } else {
      obs_out.back() += o;
      exp_out.back() += e;
    }
  }
  observed = std::move(obs_out);
  expected = std::move(exp_out);
}

inline double chi_square_p_value(double statistic, double dof) {
  if (dof < 1.0) throw std::invalid_argument("chi-square: not enough cells");
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

// One-sample goodness of fit against expected cell counts (same total as the
// observations). `estimated_params` lowers the degrees of freedom.
inline double chi_square_gof_p(std::vector<double> observed,
                               std::vector<double> expected,
                               int estimated_params = 0) {
  if (observed.size() != expected.size()) {
    throw std::invalid_argument("chi-square: cell count mismatch");
  }
  pool_cells(observed, expected);
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    statistic += diff * diff / expected[i];
  }
  const double dof =
      static_cast<double>(observed.size()) - 1.0 - static_cast<double>(estimated_params);
  return chi_square_p_value(statistic, dof);
}

// Two-sample homogeneity test for two histograms over identical bins.
inline double chi_square_two_sample_p(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("chi-square: histogram size mismatch");
  }
  double total_a = 0.0, total_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total_a += a[i];
    total_b += b[i];
  }
  const double total = total_a + total_b;
  // Pool bins so the expected count is adequate in both rows.
  std::vector<double> pa, pb;
  double ca = 0.0, cb = 0.0;
  const double floor_combined =
      5.0 * total / std::min(total_a, total_b);  // => min row expectation >= 5
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    if (ca + cb >= floor_combined) {
      pa.push_back(ca);
      pb.push_back(cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (pa.empty()) {
      pa.push_back(ca);
      pb.push_back(cb);
    } else {
      pa.back() += ca;
      pb.back() += cb;
    }
  }
  double statistic = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double column = pa[i] + pb[i];
    const double ea = total_a * column / total;
    const double eb = total_b * column / total;
    statistic += (pa[i] - ea) * (pa[i] - ea) / ea;
    statistic += (pb[i] - eb) * (pb[i] - eb) / eb;
  }
  return chi_square_p_value(statistic, static_cast<double>(pa.size()) - 1.0);
}

// Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^{k-1} e^{-2k^2x^2}.
inline double kolmogorov_q(double x) {
  if (x < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// One-sample KS test against a continuous CDF.
inline double ks_test_p(std::vector<double> sample,
                        const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
  }
  const double root_n = std::sqrt(n);
  return kolmogorov_q((root_n + 0.12 + 0.11 / root_n) * d);
}

inline double sample_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

inline double sample_variance(const std::vector<double>& values) {
  const double mean = sample_mean(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

}  // namespace stat_tests
