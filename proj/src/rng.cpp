#include "gibbs/rng.hpp"

#include <cmath>
#include <numeric>

#include "gibbs/errors.hpp"

namespace gibbs {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngState::RngState(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
  std::uint64_t x = seed;
  const std::uint64_t mixed_stream = splitmix64(x) ^ stream_id;
  std::uint64_t y = mixed_stream * 0xd1342543de82ef95ULL + seed;
  for (auto& word : s_) word = splitmix64(y);
}

std::uint64_t RngState::next_u64() {
  ++counter_;
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

RngState RngState::split(std::uint64_t index) const {
  std::uint64_t x = stream_id_ ^ 0x5851f42d4c957f2dULL;
  const std::uint64_t derived = splitmix64(x) + index * 0x9e3779b97f4a7c15ULL;
  return RngState(seed_, derived);
}

double uniform(RngState& rng) {
  // 53 random bits offset by half an ulp: never 0, never 1.
  return (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double exponential(RngState& rng) { return -std::log(uniform(rng)); }

double normal(RngState& rng) {
  // Marsaglia polar method, one variate per call.
  for (;;) {
    const double u = 2.0 * uniform(rng) - 1.0;
    const double v = 2.0 * uniform(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

namespace {

// Marsaglia-Tsang for shape >= 1.
double gamma_large(RngState& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double log_gamma_variate(RngState& rng, double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma_variate: shape must be positive");
  if (shape >= 1.0) return std::log(gamma_large(rng, shape));
  // G_a = G_{a+1} U^{1/a}.
  const double g = gamma_large(rng, shape + 1.0);
  return std::log(g) + std::log(uniform(rng)) / shape;
}

double gamma_variate(RngState& rng, double shape) { return std::exp(log_gamma_variate(rng, shape)); }

double beta_variate(RngState& rng, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_variate: parameters must be positive");
  const double la = log_gamma_variate(rng, a);
  const double lb = log_gamma_variate(rng, b);
  // a/(a+b) in log space.
  return 1.0 / (1.0 + std::exp(lb - la));
}

std::size_t discrete(RngState& rng, const double* weights, std::size_t n) {
  if (n == 0) throw DomainError("discrete: empty weight vector");
  const double total = std::accumulate(weights, weights + n, 0.0);
  if (!(total > 0.0)) throw DomainError("discrete: weights must have positive sum");
  double u = uniform(rng) * total;
  for (std::size_t i = 0; i < n; ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding left u past the last positive weight.
  for (std::size_t i = n; i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return n - 1;
}

}  // namespace gibbs
