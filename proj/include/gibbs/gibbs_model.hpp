#ifndef GIBBS_GIBBS_MODEL_HPP
#define GIBBS_GIBBS_MODEL_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gibbs/rng.hpp"
#include "gibbs/special_fn.hpp"

namespace gibbs {

/// h(t) = t^{-theta} / E[T_alpha^{-theta}].
struct PitmanYor {
  double theta = 0.0;
};

/// h(t) = exp(lambda^alpha - lambda t).
struct GeneralizedGamma {
  double lambda = 1.0;
};

/// h(t) = exp(-lambda t^{-alpha}) t^{-theta'} / normalizer, theta' = theta + j alpha.
struct MittagLefflerTilt {
  double lambda = 0.0;
  double theta = 0.0;
  unsigned j = 0;
};

/// User-supplied h with E[h(T_alpha)] = 1.
///
/// `sup_h` bounds h on (0, inf); it is required by every sampling path and a
/// violation observed during sampling raises InvalidBoundError.
struct Custom {
  std::string name;
  std::function<double(double)> h;
  double sup_h = 0.0;
};

using Family = std::variant<PitmanYor, GeneralizedGamma, MittagLefflerTilt, Custom>;

/// Custom family with h identically one (the PD(alpha, 0) law).
Custom unit_custom();

/// Factorization h(t) = exp(log_c) t^{-theta0} g(t) with 0 <= g <= 1.
///
/// Every sampler draws from the t^{-theta0}-tilted base exactly and then
/// accepts with probability g; for Pitman-Yor g is identically one.
struct TiltFactor {
  double log_c = 0.0;
  double theta0 = 0.0;
  bool g_is_one = true;
  std::function<double(double)> log_g;
};

/// Block sizes (n_1, ..., n_k) of an exchangeable partition.
class Partition {
 public:
  explicit Partition(std::vector<int> block_sizes);

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int n() const { return n_; }
  int k() const { return static_cast<int>(block_sizes_.size()); }

 private:
  std::vector<int> block_sizes_;
  int n_ = 0;
};

/// alpha plus a tilting family: parameterizes every law in the library.
///
/// Immutable after construction; Psi-weights are memoized in a shared,
/// mutex-guarded table so copies of a model share the cache.
class GibbsModel {
 public:
  GibbsModel(double alpha, Family family);

  const StableParams& params() const { return params_; }
  double alpha() const { return params_.alpha(); }
  const Family& family() const { return family_; }
  std::string family_name() const;

  double log_h(double t) const;
  double h(double t) const { return std::exp(log_h(t)); }
  const TiltFactor& tilt() const { return tilt_; }

  /// Memoized Psi^{[alpha]}_{n,k}.
  SpecialValue psi(int n, int k) const;

 private:
  struct Cache;

  StableParams params_;
  Family family_;
  TiltFactor tilt_;
  std::shared_ptr<Cache> cache_;
};

/// Pitman-Yor parameter of a Mittag-Leffler member after absorbing j.
double ml_effective_theta(const StableParams& params, const MittagLefflerTilt& family);

SpecialValue psi_weight(const GibbsModel& model, int n, int k);

/// Canonical PD(alpha, 0) EPPF p_alpha(n_1, ..., n_k), per labeled partition.
SpecialValue eppf_stable(const StableParams& params, const Partition& p);

/// Psi_{n,k} p_alpha(n_1, ..., n_k), per labeled partition.
SpecialValue eppf(const GibbsModel& model, const Partition& p);

/// P(K_n = k) for k = 1..n (entry k-1).
std::vector<double> k_pmf(const GibbsModel& model, int n);

/// V_{n,k} = Psi_{n,k} alpha^{k-1} Gamma(k) / Gamma(n).
SpecialValue gibbs_v(const GibbsModel& model, int n, int k);

struct Prediction {
  double new_table_prob = 0.0;
  std::vector<double> existing;
};

Prediction predict(const GibbsModel& model, const Partition& p);

Partition sample_partition_sequential(RngState& rng, const GibbsModel& model, int n);

/// Seating labels (block index in order of first appearance) for n customers.
std::vector<int> sample_seating_sequential(RngState& rng, const GibbsModel& model, int n);

/// X_1..X_n whose ties follow the model's partition; unique values come from `base_sampler`.
std::vector<double> sample_marginal(RngState& rng, const GibbsModel& model, int n,
                                    const std::function<double(RngState&)>& base_sampler);

}  // namespace gibbs

#endif  // GIBBS_GIBBS_MODEL_HPP
