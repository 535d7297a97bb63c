#include "gibbs/gibbs_model.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "gibbs/errors.hpp"
#include "gibbs/quadrature.hpp"
#include "gibbs/stable_table.hpp"

namespace gibbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCustomNormTol = 1e-4;

void check_family(const StableParams& params, const Family& family) {
  const double alpha = params.alpha();
  if (const auto* py = std::get_if<PitmanYor>(&family)) {
    if (!(py->theta > -alpha)) throw DomainError("PitmanYor: theta must exceed -alpha");
  } else if (const auto* gg = std::get_if<GeneralizedGamma>(&family)) {
    if (!(gg->lambda > 0.0) || !std::isfinite(gg->lambda)) throw DomainError("GeneralizedGamma: lambda must be positive");
  } else if (const auto* ml = std::get_if<MittagLefflerTilt>(&family)) {
    if (!(ml->lambda >= 0.0) || !std::isfinite(ml->lambda)) throw DomainError("MittagLefflerTilt: lambda must be nonnegative");
    if (!(ml->theta > -alpha)) throw DomainError("MittagLefflerTilt: theta must exceed -alpha");
  } else {
    const auto& custom = std::get<Custom>(family);
    if (!custom.h) throw DomainError("Custom: h is empty");
    if (!(custom.sup_h > 0.0) || !std::isfinite(custom.sup_h)) throw DomainError("Custom: sup_h must be positive and finite");
  }
}

// log of E^{(theta/alpha+1)}_{alpha,theta+1}(-lambda) E[T_alpha^{-theta}].
double ml_log_normalizer(const StableParams& params, double theta, double lambda) {
  const double alpha = params.alpha();
  return std::log(ml3_function(theta / alpha + 1.0, alpha, theta + 1.0, lambda)) +
         neg_moment_stable(params, theta).log_magnitude();
}

TiltFactor make_tilt(const StableParams& params, const Family& family) {
  const double alpha = params.alpha();
  TiltFactor tilt;
  if (const auto* py = std::get_if<PitmanYor>(&family)) {
    tilt.log_c = -neg_moment_stable(params, py->theta).log_magnitude();
    tilt.theta0 = py->theta;
  } else if (const auto* gg = std::get_if<GeneralizedGamma>(&family)) {
    const double lambda = gg->lambda;
    tilt.log_c = std::pow(lambda, alpha);
    tilt.g_is_one = false;
    tilt.log_g = [lambda](double t) { return -lambda * t; };
  } else if (const auto* ml = std::get_if<MittagLefflerTilt>(&family)) {
    const double theta = ml_effective_theta(params, *ml);
    const double lambda = ml->lambda;
    tilt.log_c = -ml_log_normalizer(params, theta, lambda);
    tilt.theta0 = theta;
    if (lambda > 0.0) {
      tilt.g_is_one = false;
      tilt.log_g = [lambda, alpha](double t) { return -lambda * std::pow(t, -alpha); };
    }
  } else {
    const auto& custom = std::get<Custom>(family);
    const double sup = custom.sup_h;
    auto h = custom.h;
    tilt.log_c = std::log(sup);
    tilt.g_is_one = false;
    tilt.log_g = [h, sup](double t) {
      const double value = h(t);
      if (value > sup) throw InvalidBoundError("custom h exceeds its declared sup_h");
      return value > 0.0 ? std::log(value / sup) : -kInf;
    };
  }
  return tilt;
}

// E[h(T_alpha)] for a custom h.
double custom_normalization(const StableParams& params, const Custom& custom) {
  const StableGrid& grid = StableGrid::get(params);
  return grid.integrate([&](double t) {
    const double value = custom.h(t);
    return value > 0.0 ? std::log(value) : -kInf;
  });
}

SpecialValue psi_pitman_yor(double alpha, double theta, int n, int k) {
  // (theta/alpha+1)_{k-1} Gamma(n) / ((theta+1)_{n-1} Gamma(k)).
  const double log_value = log_pochhammer(theta / alpha + 1.0, k - 1).log_magnitude() -
                           log_pochhammer(theta + 1.0, n - 1).log_magnitude() + std::lgamma(n) - std::lgamma(k);
  return SpecialValue::from_log(log_value);
}

SpecialValue psi_generalized_gamma(double alpha, double lambda, int n, int k) {
  // (alpha/Gamma(k)) int u^{n-1} (lambda+u)^{k alpha-n} exp(lambda^alpha - (lambda+u)^alpha) du, u = e^y.
  const double lambda_alpha = std::pow(lambda, alpha);
  auto log_f = [=](double y) {
    const double u = std::exp(y);
    const double lu = std::log(lambda + u);
    return n * y + (k * alpha - n) * lu + lambda_alpha - std::exp(alpha * lu);
  };
  const double y_lo = std::min(std::log(lambda), 0.0) - 40.0;
  const double y_hi = std::log(1000.0 + lambda_alpha) / alpha + 1.0;
  const double log_integral = quad::log_integrate(log_f, y_lo, y_hi, 1e-13, 256);
  return SpecialValue::from_log(std::log(alpha) - std::lgamma(k) + log_integral);
}

SpecialValue psi_mittag_leffler(const StableParams& params, double theta, double lambda, int n, int k) {
  const double alpha = params.alpha();
  const SpecialValue py = psi_pitman_yor(alpha, theta, n, k);
  if (lambda == 0.0) return py;
  const double num = ml3_function(theta / alpha + k, alpha, theta + n, lambda);
  const double den = ml3_function(theta / alpha + 1.0, alpha, theta + 1.0, lambda);
  return py * SpecialValue::from_log(std::log(num) - std::log(den));
}

SpecialValue psi_custom(const StableParams& params, const Custom& custom, int n, int k) {
  // E[h(T_{alpha,k alpha} / B)], B ~ Beta(k alpha, n - k alpha).
  const double alpha = params.alpha();
  const double a = k * alpha;
  const double b = n - k * alpha;
  const double log_moment = neg_moment_stable(params, a).log_magnitude();
  const StableGrid& grid = StableGrid::get(params);
  const double value = grid.integrate_tilted(a, [&](double t) {
    return quad::beta_expectation([&](double x, double) { return custom.h(t / x); }, a, b, 1e-10).value;
  }) / std::exp(log_moment);
  return SpecialValue::from_value(value);
}

}  // namespace

Custom unit_custom() { return Custom{"unit", [](double) { return 1.0; }, 1.0}; }

Partition::Partition(std::vector<int> block_sizes) : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) throw DomainError("Partition: no blocks");
  for (int size : block_sizes_) {
    if (size < 1) throw DomainError("Partition: block sizes must be positive");
    n_ += size;
  }
}

struct GibbsModel::Cache {
  std::mutex mutex;
  std::map<std::pair<int, int>, SpecialValue> psi;
};

double ml_effective_theta(const StableParams& params, const MittagLefflerTilt& family) {
  return family.theta + family.j * params.alpha();
}

GibbsModel::GibbsModel(double alpha, Family family)
    : params_(alpha), family_(std::move(family)), cache_(std::make_shared<Cache>()) {
  check_family(params_, family_);
  tilt_ = make_tilt(params_, family_);
  if (const auto* custom = std::get_if<Custom>(&family_)) {
    const double mass = custom_normalization(params_, *custom);
    if (std::abs(mass - 1.0) > kCustomNormTol) {
      throw DomainError("Custom: E[h(T_alpha)] = " + std::to_string(mass) + " differs from 1");
    }
  }
}

std::string GibbsModel::family_name() const {
  struct Visitor {
    std::string operator()(const PitmanYor&) const { return "pitman_yor"; }
    std::string operator()(const GeneralizedGamma&) const { return "generalized_gamma"; }
    std::string operator()(const MittagLefflerTilt&) const { return "mittag_leffler"; }
    std::string operator()(const Custom&) const { return "custom"; }
  };
  return std::visit(Visitor{}, family_);
}

double GibbsModel::log_h(double t) const {
  if (!(t > 0.0)) throw DomainError("log_h: t must be positive");
  if (const auto* custom = std::get_if<Custom>(&family_)) {
    const double value = custom->h(t);
    return value > 0.0 ? std::log(value) : -kInf;
  }
  double value = tilt_.log_c - tilt_.theta0 * std::log(t);
  if (!tilt_.g_is_one) value += tilt_.log_g(t);
  return value;
}

SpecialValue GibbsModel::psi(int n, int k) const {
  if (n < 1 || k < 1 || k > n) throw DomainError("psi: need 1 <= k <= n");
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->psi.find({n, k});
    if (it != cache_->psi.end()) return it->second;
  }
  SpecialValue value;
  if (n == 1) {
    value = SpecialValue::one();
  } else if (const auto* py = std::get_if<PitmanYor>(&family_)) {
    value = psi_pitman_yor(alpha(), py->theta, n, k);
  } else if (const auto* gg = std::get_if<GeneralizedGamma>(&family_)) {
    value = psi_generalized_gamma(alpha(), gg->lambda, n, k);
  } else if (const auto* ml = std::get_if<MittagLefflerTilt>(&family_)) {
    value = psi_mittag_leffler(params_, ml_effective_theta(params_, *ml), ml->lambda, n, k);
  } else {
    value = psi_custom(params_, std::get<Custom>(family_), n, k);
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->psi.emplace(std::make_pair(n, k), value);
  return value;
}

SpecialValue psi_weight(const GibbsModel& model, int n, int k) { return model.psi(n, k); }

SpecialValue eppf_stable(const StableParams& params, const Partition& p) {
  const double alpha = params.alpha();
  const int k = p.k();
  double log_value = (k - 1) * std::log(alpha) + std::lgamma(k) - std::lgamma(p.n());
  for (int size : p.block_sizes()) log_value += log_pochhammer(1.0 - alpha, size - 1).log_magnitude();
  return SpecialValue::from_log(log_value);
}

SpecialValue eppf(const GibbsModel& model, const Partition& p) {
  return model.psi(p.n(), p.k()) * eppf_stable(model.params(), p);
}

SpecialValue gibbs_v(const GibbsModel& model, int n, int k) {
  const double log_factor = (k - 1) * std::log(model.alpha()) + std::lgamma(k) - std::lgamma(n);
  return model.psi(n, k) * SpecialValue::from_log(log_factor);
}

std::vector<double> k_pmf(const GibbsModel& model, int n) {
  if (n < 1) throw DomainError("k_pmf: n must be positive");
  std::vector<double> pmf(n);
  for (int k = 1; k <= n; ++k) {
    pmf[k - 1] = (gibbs_v(model, n, k) * gen_stirling(model.params(), n, k)).value();
  }
  return pmf;
}

Prediction predict(const GibbsModel& model, const Partition& p) {
  const int n = p.n();
  const int k = p.k();
  const double alpha = model.alpha();
  const SpecialValue base = model.psi(n, k);
  const double same = (model.psi(n + 1, k) / base).value();
  Prediction out;
  out.new_table_prob = (model.psi(n + 1, k + 1) / base).value() * k * alpha / n;
  out.existing.reserve(k);
  for (int size : p.block_sizes()) out.existing.push_back(same * (size - alpha) / n);
  return out;
}

std::vector<int> sample_seating_sequential(RngState& rng, const GibbsModel& model, int n) {
  if (n < 1) throw DomainError("sample_seating_sequential: n must be positive");
  std::vector<int> labels{0};
  std::vector<int> sizes{1};
  std::vector<double> probs;
  for (int i = 1; i < n; ++i) {
    const Prediction pred = predict(model, Partition(sizes));
    probs.assign(pred.existing.begin(), pred.existing.end());
    probs.push_back(pred.new_table_prob);
    const std::size_t choice = discrete(rng, probs.data(), probs.size());
    if (choice == sizes.size()) {
      sizes.push_back(1);
    } else {
      ++sizes[choice];
    }
    labels.push_back(static_cast<int>(choice));
  }
  return labels;
}

Partition sample_partition_sequential(RngState& rng, const GibbsModel& model, int n) {
  const std::vector<int> labels = sample_seating_sequential(rng, model, n);
  std::vector<int> sizes;
  for (int label : labels) {
    if (label == static_cast<int>(sizes.size())) sizes.push_back(0);
    ++sizes[label];
  }
  return Partition(sizes);
}

std::vector<double> sample_marginal(RngState& rng, const GibbsModel& model, int n,
                                    const std::function<double(RngState&)>& base_sampler) {
  const std::vector<int> labels = sample_seating_sequential(rng, model, n);
  std::vector<double> atoms;
  std::vector<double> values;
  values.reserve(n);
  for (int label : labels) {
    if (label == static_cast<int>(atoms.size())) atoms.push_back(base_sampler(rng));
    values.push_back(atoms[label]);
  }
  return values;
}

}  // namespace gibbs
