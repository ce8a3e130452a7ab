#pragma once

#include <cstdint>
#include <random>

namespace fbp {

// Deterministic, splittable random stream. Each (master_seed, stream_id) pair
// owns an independent engine, so a stream's draws are bit-identical no matter
// how many other streams exist or which thread runs them. counter() reports
// how many raw draws the stream has consumed; a fresh stream advanced by
// skip(counter) reproduces the tail of another with the same ids.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  // Uniform on the open interval (0,1): both endpoints are unreachable, so
  // log(u) and the stable kernel below are always finite.
  double uniform();

  void skip(std::uint64_t n);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
};

// Pure transforms (deterministic kernels, unit-testable without a stream).
double exponential_from_uniform(double u, double rate);
// Kanter/Chambers-Mallows-Stuck kernel for the one-sided stable law with
// Laplace transform exp(-s^nu), nu in (0,1):
//   V = [sin(nu pi u)/sin(pi u)] * [sin((1-nu) pi u)/sin(pi u)]^(1/nu - 1)
//       / |ln w|^(1/nu - 1)
double stable_from_uniforms(double u, double w, double nu);

double sample_exponential(RngStream& rng, double rate);
double sample_one_sided_stable(RngStream& rng, double nu);

struct SojournSample {
  double duration;
};

// Mittag-Leffler sojourn with survival P{S >= t} = E_nu(-rate * t^nu),
// sampled as S = xi^(1/nu) * V with xi ~ Exp(rate), V one-sided stable.
// nu = 1 degenerates to the plain exponential (same draw count).
SojournSample sample_ml_sojourn(RngStream& rng, double nu, double rate);

}  // namespace fbp
