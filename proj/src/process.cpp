#include "fbp/process.hpp"

#include <cmath>
#include <stdexcept>

namespace fbp {

namespace {

// Single core for both simulators: `nu` is passed explicitly so the classical
// path is exactly the nu = 1 instance, consuming the stream draw-for-draw the
// same way sample_ml_sojourn does at nu = 1.
SamplePath run_chain(const ProcessParams& params, double nu, double horizon,
                     RngStream& stream) {
  SamplePath path;
  path.initial = params.initial;
  path.horizon = horizon;
  int n = params.initial;
  double t = 0.0;
  while (true) {
    const double birth = params.lambda * static_cast<double>(params.capacity - n);
    const double rate = birth + params.mu * static_cast<double>(n);
    if (rate <= 0.0) break;  // frozen state: no further transitions
    t += sample_ml_sojourn(stream, nu, rate).duration;
    if (!(t < horizon)) break;
    if (path.events.size() >= kMaxPathEvents) {
      path.truncated = true;
      break;
    }
    n += (rate * stream.uniform() < birth) ? 1 : -1;
    path.events.push_back({t, n});
  }
  return path;
}

SamplePath run_chain_events(const ProcessParams& params, double nu,
                            std::size_t event_count, RngStream& stream) {
  SamplePath path;
  path.initial = params.initial;
  int n = params.initial;
  double t = 0.0;
  const std::size_t target = std::min(event_count, kMaxPathEvents);
  path.truncated = target < event_count;
  path.events.reserve(target);
  while (path.events.size() < target) {
    const double birth = params.lambda * static_cast<double>(params.capacity - n);
    const double rate = birth + params.mu * static_cast<double>(n);
    if (rate <= 0.0) break;
    t += sample_ml_sojourn(stream, nu, rate).duration;
    n += (rate * stream.uniform() < birth) ? 1 : -1;
    path.events.push_back({t, n});
  }
  path.horizon = path.events.empty() ? 0.0 : path.events.back().time;
  return path;
}

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
}

}  // namespace

void ProcessParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be nonnegative and finite");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("mu must be nonnegative and finite");
  }
  if (!(lambda + mu > 0.0)) {
    throw std::invalid_argument("lambda + mu must be positive");
  }
  if (!(nu > 0.0) || !(nu <= 1.0)) {
    throw std::invalid_argument("nu must lie in (0, 1]");
  }
  if (capacity < 1) {
    throw std::invalid_argument("capacity must be a positive integer");
  }
  if (initial < 1 || initial > capacity) {
    throw std::invalid_argument("initial population must lie in [1, capacity]");
  }
}

SamplePath simulate_binomial_path(const ProcessParams& params, double horizon,
                                  RngStream& stream) {
  params.validate();
  check_horizon(horizon);
  return run_chain(params, 1.0, horizon, stream);
}

SamplePath simulate_fbp_path(const ProcessParams& params, double horizon,
                             RngStream& stream) {
  params.validate();
  check_horizon(horizon);
  return run_chain(params, params.nu, horizon, stream);
}

SamplePath simulate_binomial_path_events(const ProcessParams& params,
                                         std::size_t event_count, RngStream& stream) {
  params.validate();
  if (event_count == 0) {
    throw std::invalid_argument("event_count must be positive");
  }
  return run_chain_events(params, 1.0, event_count, stream);
}

SamplePath simulate_fbp_path_events(const ProcessParams& params,
                                    std::size_t event_count, RngStream& stream) {
  params.validate();
  if (event_count == 0) {
    throw std::invalid_argument("event_count must be positive");
  }
  return run_chain_events(params, params.nu, event_count, stream);
}

int sample_fbp_marginal(const ProcessParams& params, double t, RngStream& stream) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be nonnegative and finite");
  }
  if (t == 0.0) return params.initial;
  double tau = t;
  if (params.nu < 1.0) {
    const double v = sample_one_sided_stable(stream, params.nu);
    tau = std::pow(t / v, params.nu);
  }
  if (tau <= 0.0) return params.initial;
  const SamplePath path = run_chain(params, 1.0, tau, stream);
  return path.events.empty() ? params.initial : path.events.back().population;
}

int path_value_at(const SamplePath& path, double t) {
  if (!(t >= 0.0) || !(t <= path.horizon)) {
    throw std::out_of_range("t outside [0, horizon]");
  }
  // Last event with time <= t; the implicit (0, initial) covers the rest.
  std::size_t lo = 0, hi = path.events.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (path.events[mid].time <= t) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo == 0 ? path.initial : path.events[lo - 1].population;
}

std::vector<double> stationary_pmf(const ProcessParams& params) {
  params.validate();
  const int n = params.capacity;
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  const double xi = params.xi();
  if (xi == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (xi == 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0;
    return pmf;
  }
  const double log_xi = std::log(xi);
  const double log_eta = std::log1p(-xi);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  for (int k = 0; k <= n; ++k) {
    const double lp = lg_n1 - std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0) +
                      static_cast<double>(k) * log_xi +
                      static_cast<double>(n - k) * log_eta;
    pmf[static_cast<std::size_t>(k)] = std::exp(lp);
  }
  return pmf;
}

}  // namespace fbp
