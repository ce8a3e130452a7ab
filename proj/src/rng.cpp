#include "fbp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fbp {

namespace {

void check_nu(double nu) {
  if (!(nu > 0.0) || !(nu <= 1.0)) {
    throw std::invalid_argument("nu must lie in (0, 1]");
  }
}

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("rate must be positive and finite");
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  ++counter_;
  // Top 53 bits, centered on the grid midpoints: u in
  // [2^-54, 1 - 2^-54], so 0 and 1 are never returned.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

void RngStream::skip(std::uint64_t n) {
  engine_.discard(n);
  counter_ += n;
}

double exponential_from_uniform(double u, double rate) {
  check_rate(rate);
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::invalid_argument("u must lie in (0, 1)");
  }
  return -std::log(u) / rate;
}

double stable_from_uniforms(double u, double w, double nu) {
  check_nu(nu);
  if (!(u > 0.0) || !(u < 1.0) || !(w > 0.0) || !(w < 1.0)) {
    throw std::invalid_argument("u and w must lie in (0, 1)");
  }
  if (nu == 1.0) {
    return 1.0;  // the subordinator degenerates to the identity drift
  }
  const double pu = M_PI * u;
  // Ratio form: sin(nu pi u) * sin((1-nu) pi u)^(1/nu-1) / sin(pi u)^(1/nu)
  // evaluated as a product of two bounded factors so neither over- nor
  // underflows for u near the endpoints.
  const double a = std::sin(nu * pu) / std::sin(pu);
  const double b = std::sin((1.0 - nu) * pu) / std::sin(pu);
  const double power = 1.0 / nu - 1.0;
  return a * std::pow(b / -std::log(w), power);
}

double sample_exponential(RngStream& rng, double rate) {
  return exponential_from_uniform(rng.uniform(), rate);
}

double sample_one_sided_stable(RngStream& rng, double nu) {
  check_nu(nu);
  if (nu == 1.0) return 1.0;
  // The kernel is finite for all interior (u, w); the retry loop only guards
  // against degenerate rounding at the extreme tails.
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double v = stable_from_uniforms(rng.uniform(), rng.uniform(), nu);
    if (std::isfinite(v) && v > 0.0) return v;
  }
  throw std::runtime_error("stable sampler failed to produce a finite draw");
}

SojournSample sample_ml_sojourn(RngStream& rng, double nu, double rate) {
  check_nu(nu);
  check_rate(rate);
  const double xi = sample_exponential(rng, rate);
  if (nu == 1.0) return {xi};
  const double v = sample_one_sided_stable(rng, nu);
  return {std::pow(xi, 1.0 / nu) * v};
}

}  // namespace fbp
