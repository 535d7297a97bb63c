#ifndef GIBBS_STABLE_TABLE_HPP
#define GIBBS_STABLE_TABLE_HPP

#include <functional>
#include <vector>

#include "gibbs/special_fn.hpp"

namespace gibbs {

/// f_alpha tabulated on a uniform grid in z = log t for trapezoid integration.
///
/// The grid covers every t where t^{1-c} f_alpha(t) can matter for tilts
/// t^{-c} with 0 <= c <= max_tilt, so integrals of the form
/// int g(t) t^{-c} f_alpha(t) dt with bounded g are exponentially accurate.
class StableGrid {
 public:
  static constexpr double kSpacing = 0.02;
  static constexpr double kMaxTilt = 16.0;

  /// Shared, lazily built grid for this alpha.
  static const StableGrid& get(const StableParams& params);

  const std::vector<double>& log_t() const { return log_t_; }
  /// log(t f_alpha(t)) at each node, the density of z = log T.
  const std::vector<double>& log_density_z() const { return log_density_z_; }

  /// int_0^inf exp(log_g(t)) f_alpha(t) dt.
  double integrate(const std::function<double(double)>& log_g) const;

  /// int_0^inf t^{-tilt} g(t) f_alpha(t) dt for bounded g >= 0; g is evaluated
  /// only where t^{-tilt} f_alpha(t) is within exp(-log_cutoff) of its peak.
  double integrate_tilted(double tilt, const std::function<double(double)>& g, double log_cutoff = 60.0) const;

  explicit StableGrid(const StableParams& params);

 private:
  std::vector<double> log_t_;
  std::vector<double> log_density_z_;
};

}  // namespace gibbs

#endif  // GIBBS_STABLE_TABLE_HPP
