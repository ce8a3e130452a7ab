#pragma once

#include <cstddef>
#include <vector>

#include "fbp/rng.hpp"

namespace fbp {

// Birth-death chain on {0,...,N}: in state n, births arrive at lambda*(N-n)
// and deaths at mu*n, so the stationary law is Binomial(N, xi). The
// fractional variant keeps the embedded jump chain and replaces exponential
// sojourns with Mittag-Leffler ones of order nu.
struct ProcessParams {
  double lambda = 0.0;  // birth rate per vacant slot
  double mu = 0.0;      // death rate per individual
  double nu = 1.0;      // fractional order in (0, 1]
  int capacity = 0;     // N
  int initial = 0;      // M, the population at t = 0

  // Throws std::invalid_argument unless lambda >= 0, mu >= 0,
  // lambda + mu > 0, nu in (0, 1], and 1 <= initial <= capacity.
  // (Zero lambda or mu is allowed so absorbing edge cases stay expressible;
  // both zero is not.)
  void validate() const;

  double xi() const { return lambda / (lambda + mu); }
  double rate_sum() const { return lambda + mu; }
  double total_rate(int n) const {
    return lambda * static_cast<double>(capacity - n) + mu * static_cast<double>(n);
  }
};

struct PathEvent {
  double time;
  int population;
};

// Event list of one realization. The start (0, initial) is implicit: event
// times are strictly positive and increasing, consecutive populations differ
// by exactly +-1 and stay inside [0, capacity]. `truncated` marks paths cut
// off by the event cap rather than the horizon.
struct SamplePath {
  int initial = 0;
  double horizon = 0.0;
  bool truncated = false;
  std::vector<PathEvent> events;
};

inline constexpr std::size_t kMaxPathEvents = 10'000'000;

// Classical chain: exponential sojourns at the total rate of the current
// state. A state with zero total rate (possible only when lambda or mu is
// zero) freezes the path until the horizon.
SamplePath simulate_binomial_path(const ProcessParams& params, double horizon,
                                  RngStream& stream);

// Fractional chain: same embedded jump chain, Mittag-Leffler sojourns.
// With nu = 1 this consumes the stream identically to the classical
// simulator, so matched streams give bit-identical paths.
SamplePath simulate_fbp_path(const ProcessParams& params, double horizon,
                             RngStream& stream);

// Fixed-event-count variants (figure-style output): exactly `event_count`
// events unless the chain freezes first; horizon is set to the last event
// time.
SamplePath simulate_binomial_path_events(const ProcessParams& params,
                                         std::size_t event_count, RngStream& stream);
SamplePath simulate_fbp_path_events(const ProcessParams& params,
                                    std::size_t event_count, RngStream& stream);

// One draw of the FBP marginal at time t through the inverse-stable time
// change: V one-sided stable, tau = (t/V)^nu, then the classical chain run
// to horizon tau. For nu = 1, tau = t exactly and no stable draw is spent.
int sample_fbp_marginal(const ProcessParams& params, double t, RngStream& stream);

// Population at time t (right-continuous step function); initial value
// before the first event. Throws std::out_of_range unless 0 <= t <= horizon.
int path_value_at(const SamplePath& path, double t);

// Binomial(N, xi) weights over 0..N, evaluated through lgamma so large N
// stays stable; sums to 1 within 1e-12.
std::vector<double> stationary_pmf(const ProcessParams& params);

}  // namespace fbp
