#ifndef GIBBS_SAMPLERS_HPP
#define GIBBS_SAMPLERS_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "gibbs/gibbs_model.hpp"
#include "gibbs/rng.hpp"
#include "gibbs/special_fn.hpp"
#include "gibbs/stable_table.hpp"

namespace gibbs {

inline constexpr double kDefaultStickEps = 1e-6;
inline constexpr std::size_t kDefaultStickCap = 10000;
inline constexpr std::size_t kRejectionBudget = 1000000;

/// Finite stick sequence plus the unrevealed remainder.
struct StickWeights {
  std::vector<double> weights;
  double residual = 1.0;
};

/// T_alpha with E[exp(-s T)] = exp(-s^alpha), by Kanter's representation.
double sample_positive_stable(RngState& rng, const StableParams& params);

/// Exponentially tilted stable: density exp(lambda^alpha - lambda t) f_alpha(t).
double sample_exp_tilted_stable(RngState& rng, const StableParams& params, double lambda);

/// T_{alpha,theta}: density t^{-theta} f_alpha(t) / E[T_alpha^{-theta}], theta > -alpha.
double sample_tilted_stable(RngState& rng, const StableParams& params, double theta);

std::vector<double> sample_dirichlet(RngState& rng, const std::vector<double>& params);

/// GEM(alpha, theta) sticks truncated once the residual is at most eps.
StickWeights sample_gem_py(RngState& rng, const StableParams& params, double theta, double eps,
                           std::size_t max_sticks = kDefaultStickCap);

/// Exact sampler for the remaining-mass chain of size-biased PD(alpha | t) picks.
///
/// Given remaining total r, the next remaining total s has density
/// proportional to (r - s)^{-alpha} f_alpha(s) on (0, r). Draws use rejection
/// from a piecewise envelope: sup f_alpha times the exact (1-x)^{-alpha}
/// factor on each cell of an adaptive grid in x = s / r.
class PdPickSampler {
 public:
  explicit PdPickSampler(const StableParams& params);

  struct Step {
    double remaining;
    double pick;
  };

  Step next(RngState& rng, double r) const;
  const StableParams& params() const { return params_; }

 private:
  StableParams params_;
  double mode_;
  double log_f_mode_;
  const StableGrid* grid_;
};

/// Normalized density of the first relative pick V of PD(alpha | t).
double pd_first_pick_density(const StableParams& params, double t, double v);

/// Size-biased PD(alpha | t) sticks truncated once the residual is at most eps.
StickWeights sample_pd_given_total(RngState& rng, const StableParams& params, double t, double eps,
                                   std::size_t max_sticks = kDefaultStickCap);

/// Size-biased sticks revealed on demand.
///
/// Seating customers reveals a stick only when one lands in the unrevealed
/// mass, so partition statistics are exact without any truncation.
class LazySticks {
 public:
  /// GEM(alpha, theta) sticks.
  static LazySticks gem(const StableParams& params, double theta);
  /// PD(alpha | t) sticks.
  static LazySticks pd_given_total(const StableParams& params, double t);

  std::size_t revealed() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double residual() const { return residual_; }

  /// Stick index of a fresh uniform draw; a draw in the residual reveals
  /// exactly one new stick, the next size-biased pick.
  std::size_t draw_index(RngState& rng);
  /// Reveal sticks until the residual is at most eps.
  void reveal_until(RngState& rng, double eps, std::size_t max_sticks = kDefaultStickCap);
  void reveal_next(RngState& rng);

 private:
  LazySticks() = default;

  std::function<double(RngState&, std::size_t, double)> next_residual_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double residual_ = 1.0;
};

/// T with density h(t) f_alpha(t) for the model's family.
double sample_mixing_T(RngState& rng, const GibbsModel& model);

}  // namespace gibbs

#endif  // GIBBS_SAMPLERS_HPP
