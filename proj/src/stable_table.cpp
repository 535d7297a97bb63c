#include "gibbs/stable_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace gibbs {

namespace {

constexpr double kNegligible = -80.0;

}  // namespace

StableGrid::StableGrid(const StableParams& params) {
  const double alpha = params.alpha();
  auto node = [&](double z) { return z + log_stable_pdf(params, std::exp(z)); };

  // Right edge: tail mass t^{-alpha}/Gamma(1-alpha) below e^{kNegligible}.
  const double z_hi = (-kNegligible - std::lgamma(1.0 - alpha)) / alpha;
  // Left edge: super-exponential decay must beat the largest tilt t^{-kMaxTilt}.
  double z_lo = -1.0;
  while (z_lo > -745.0 && node(z_lo) + kMaxTilt * (-z_lo) > kNegligible) z_lo -= 1.0;

  const auto count = static_cast<std::size_t>(std::ceil((z_hi - z_lo) / kSpacing)) + 1;
  log_t_.reserve(count);
  log_density_z_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = z_lo + kSpacing * static_cast<double>(i);
    log_t_.push_back(z);
    log_density_z_.push_back(node(z));
  }
}

const StableGrid& StableGrid::get(const StableParams& params) {
  static std::mutex mutex;
  static std::map<double, std::unique_ptr<StableGrid>> grids;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = grids.find(params.alpha());
    if (it != grids.end()) return *it->second;
  }
  // Built outside the lock; a concurrent duplicate build is discarded.
  auto grid = std::make_unique<StableGrid>(params);
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = grids.emplace(params.alpha(), std::move(grid));
  return *it->second;
}

double StableGrid::integrate(const std::function<double(double)>& log_g) const {
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(log_t_.size(), ninf);
  double peak = ninf;
  for (std::size_t i = 0; i < log_t_.size(); ++i) {
    if (!std::isfinite(log_density_z_[i])) continue;
    const double lg = log_g(std::exp(log_t_[i]));
    if (std::isnan(lg) || lg == ninf) continue;
    terms[i] = lg + log_density_z_[i];
    peak = std::max(peak, terms[i]);
  }
  if (peak == ninf) return 0.0;
  double sum = 0.0;
  for (double term : terms) {
    if (term != ninf) sum += std::exp(term - peak);
  }
  return std::exp(peak) * sum * kSpacing;
}

double StableGrid::integrate_tilted(double tilt, const std::function<double(double)>& g, double log_cutoff) const {
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> base(log_t_.size(), ninf);
  double peak = ninf;
  for (std::size_t i = 0; i < log_t_.size(); ++i) {
    if (!std::isfinite(log_density_z_[i])) continue;
    base[i] = log_density_z_[i] - tilt * log_t_[i];
    peak = std::max(peak, base[i]);
  }
  if (peak == ninf) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < log_t_.size(); ++i) {
    if (base[i] < peak - log_cutoff) continue;
    const double value = g(std::exp(log_t_[i]));
    if (value > 0.0) sum += value * std::exp(base[i] - peak);
  }
  return std::exp(peak) * sum * kSpacing;
}

}  // namespace gibbs
