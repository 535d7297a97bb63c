#ifndef GIBBS_RNG_HPP
#define GIBBS_RNG_HPP

#include <array>
#include <cstdint>

namespace gibbs {

/// xoshiro256** generator keyed by (seed, stream_id).
///
/// The state is derived from both keys through splitmix64, so the variate
/// sequence depends only on the pair and is identical on every platform.
/// All continuous distributions below are implemented here rather than taken
/// from <random>, whose algorithms are implementation-defined.
class RngState {
 public:
  RngState(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Independent generator for sub-stream `index` of this stream.
  RngState split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

/// Uniform on the open interval (0, 1).
double uniform(RngState& rng);
double exponential(RngState& rng);
double normal(RngState& rng);
/// Gamma(shape, 1).
double gamma_variate(RngState& rng, double shape);
/// log of a Gamma(shape, 1) draw; stays finite for tiny shapes.
double log_gamma_variate(RngState& rng, double shape);
double beta_variate(RngState& rng, double a, double b);
/// Index in [0, n) with probability proportional to weights[i].
std::size_t discrete(RngState& rng, const double* weights, std::size_t n);

}  // namespace gibbs

#endif  // GIBBS_RNG_HPP
