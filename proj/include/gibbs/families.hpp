#ifndef GIBBS_FAMILIES_HPP
#define GIBBS_FAMILIES_HPP

#include <utility>

#include "gibbs/gibbs_model.hpp"

namespace gibbs {

/// Exact posterior hyperparameters of the Pitman-Yor family.
struct PyPosteriorParams {
  std::pair<double, double> beta_t1;  // law of the T1 scale split
  double tilt_t1 = 0.0;               // polynomial tilt of the T1 stable variable
  std::pair<double, double> beta_t2;  // law of the T2 scale split
  double tilt_t2 = 0.0;
};

PyPosteriorParams py_posterior_params(double alpha, double theta, const Partition& p);

/// Generalized Mittag-Leffler member conditioned on N(lambda L) = j.
struct MLTiltParams {
  MLTiltParams(double alpha, double theta, unsigned j, double lambda);

  StableParams params;
  double theta;
  unsigned j;
  double lambda;

  double alpha() const { return params.alpha(); }
  GibbsModel model() const;
};

/// E^{(gamma)}_{alpha,beta}(-lambda) in its normalized form (ml3_function).
double ml_e(double gamma, double alpha, double beta, double lambda);

/// E^{(theta/alpha+k)}_{alpha,theta+n}(-lambda) by its series.
double ml_e_nk(const MLTiltParams& ml, int n, int k);

/// The same quantity as the Beta mixture
/// E[E^{((theta+n)/alpha+1)}_{alpha,theta+n+1}(-lambda B)], B ~ Beta(theta/alpha+k, n/alpha-k).
double ml_e_nk_beta_mixture(const MLTiltParams& ml, int n, int k);

/// h(t) = exp(-lambda t^{-alpha}) t^{-theta-j alpha} / normalizer.
double ml_tilt_h(const MLTiltParams& ml, double t);

/// Density of the diversity T_{alpha,theta}^{-alpha}: s^{theta/alpha} g_alpha(s) / E[T_alpha^{-theta}].
double ml_diversity_pdf(const StableParams& params, double theta, double s);

/// Density of the T1 scale split (requires j = 0).
double ml_posterior_rk_pdf(const MLTiltParams& ml, int n, int k, double b);

/// Density of the T2 scale split (requires j = 0).
double ml_beta_lambda_pdf(const MLTiltParams& ml, int n, int k, double b);

/// Density of the diversity of the T2 continuous part, i.e. of t_draw^{-alpha} (requires j = 0).
double ml_gnk_pdf(const MLTiltParams& ml, int n, int k, double s);

/// Prediction rule written through E-function ratios.
Prediction ml_predict(const MLTiltParams& ml, const Partition& p);

/// Tilted EPPF as an E-function ratio times the Pitman-Yor EPPF.
SpecialValue ml_eppf(const MLTiltParams& ml, const Partition& p);

}  // namespace gibbs

#endif  // GIBBS_FAMILIES_HPP
