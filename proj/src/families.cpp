#include "gibbs/families.hpp"

#include <cmath>

#include "gibbs/errors.hpp"
#include "gibbs/quadrature.hpp"

namespace gibbs {

namespace {

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("families: need 1 <= k <= n");
}

void require_j_zero(const MLTiltParams& ml) {
  if (ml.j != 0) throw DomainError("families: closed-form posterior densities need j = 0");
}

}  // namespace

PyPosteriorParams py_posterior_params(double alpha, double theta, const Partition& p) {
  const StableParams params(alpha);
  if (!(theta > -alpha)) throw DomainError("py_posterior_params: theta must exceed -alpha");
  const double n = p.n();
  const double k = p.k();
  PyPosteriorParams out;
  out.beta_t1 = {theta + k * alpha, n - k * alpha};
  out.tilt_t1 = theta + k * alpha;
  out.beta_t2 = {theta / alpha + k, n / alpha - k};
  out.tilt_t2 = theta + n;
  return out;
}

MLTiltParams::MLTiltParams(double alpha_, double theta_, unsigned j_, double lambda_)
    : params(alpha_), theta(theta_), j(j_), lambda(lambda_) {
  if (!(theta > -alpha_)) throw DomainError("MLTiltParams: theta must exceed -alpha");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("MLTiltParams: lambda must be nonnegative");
}

GibbsModel MLTiltParams::model() const { return GibbsModel(alpha(), MittagLefflerTilt{lambda, theta, j}); }

double ml_e(double gamma, double alpha, double beta, double lambda) {
  return ml3_function(gamma, alpha, beta, lambda);
}

double ml_e_nk(const MLTiltParams& ml, int n, int k) {
  check_nk(n, k);
  const double a = ml.alpha();
  return ml_e(ml.theta / a + k, a, ml.theta + n, ml.lambda);
}

double ml_e_nk_beta_mixture(const MLTiltParams& ml, int n, int k) {
  check_nk(n, k);
  const double a = ml.alpha();
  const double shape_a = ml.theta / a + k;
  const double shape_b = n / a - k;
  const double gamma = (ml.theta + n) / a + 1.0;
  const double beta = ml.theta + n + 1.0;
  auto integrand = [&](double b, double) { return ml_e(gamma, a, beta, ml.lambda * b); };
  return quad::beta_expectation(integrand, shape_a, shape_b, 1e-12).value;
}

double ml_tilt_h(const MLTiltParams& ml, double t) {
  if (!(t > 0.0)) throw DomainError("ml_tilt_h: t must be positive");
  const double a = ml.alpha();
  const double shifted = ml.theta + ml.j * a;
  const double normalizer = ml_e(ml.theta / a + ml.j + 1.0, a, shifted + 1.0, ml.lambda);
  const double log_h = -ml.lambda * std::pow(t, -a) - shifted * std::log(t) - std::log(normalizer) -
                       neg_moment_stable(ml.params, shifted).log_magnitude();
  return std::exp(log_h);
}

double ml_diversity_pdf(const StableParams& params, double theta, double s) {
  if (!(s > 0.0)) return 0.0;
  const double a = params.alpha();
  const double log_s = std::log(s);
  const double log_g = log_stable_pdf(params, std::exp(-log_s / a)) - (1.0 / a + 1.0) * log_s - std::log(a);
  return std::exp(theta / a * log_s + log_g - neg_moment_stable(params, theta).log_magnitude());
}

double ml_posterior_rk_pdf(const MLTiltParams& ml, int n, int k, double b) {
  check_nk(n, k);
  require_j_zero(ml);
  if (!(b > 0.0 && b < 1.0)) return 0.0;
  const double a = ml.alpha();
  const double shifted = ml.theta + k * a;
  // Laplace transform of T_{alpha,theta+k alpha}^{-alpha} at lambda b^alpha.
  const double numerator = ml_e(shifted / a + 1.0, a, shifted + 1.0, ml.lambda * std::pow(b, a));
  return numerator / ml_e_nk(ml, n, k) * beta_pdf(shifted, n - k * a, b);
}

double ml_beta_lambda_pdf(const MLTiltParams& ml, int n, int k, double b) {
  check_nk(n, k);
  require_j_zero(ml);
  if (!(b > 0.0 && b < 1.0)) return 0.0;
  const double a = ml.alpha();
  const double shifted = ml.theta + n;
  // Laplace transform of T_{alpha,theta+n}^{-alpha} at lambda b.
  const double numerator = ml_e(shifted / a + 1.0, a, shifted + 1.0, ml.lambda * b);
  return numerator / ml_e_nk(ml, n, k) * beta_pdf(ml.theta / a + k, n / a - k, b);
}

double ml_gnk_pdf(const MLTiltParams& ml, int n, int k, double s) {
  check_nk(n, k);
  require_j_zero(ml);
  if (!(s > 0.0)) return 0.0;
  const double a = ml.alpha();
  const double confluent = hyp1f1_neg(ml.theta / a + k, ml.theta / a + n / a, ml.lambda * s);
  return confluent / ml_e_nk(ml, n, k) * ml_diversity_pdf(ml.params, ml.theta + n, s);
}

Prediction ml_predict(const MLTiltParams& ml, const Partition& p) {
  const int n = p.n();
  const int k = p.k();
  const double a = ml.alpha();
  const double theta = ml.theta + ml.j * a;
  const double base = ml_e(theta / a + k, a, theta + n, ml.lambda);
  Prediction out;
  out.new_table_prob = ml_e(theta / a + k + 1.0, a, theta + n + 1.0, ml.lambda) / base * (theta + k * a) / (theta + n);
  const double existing = ml_e(theta / a + k, a, theta + n + 1.0, ml.lambda) / base;
  for (int size : p.block_sizes()) out.existing.push_back(existing * (size - a) / (theta + n));
  return out;
}

SpecialValue ml_eppf(const MLTiltParams& ml, const Partition& p) {
  const int n = p.n();
  const int k = p.k();
  const double a = ml.alpha();
  const double theta = ml.theta + ml.j * a;
  const double ratio = ml_e(theta / a + k, a, theta + n, ml.lambda) / ml_e(theta / a + 1.0, a, theta + 1.0, ml.lambda);
  // Pitman-Yor EPPF: (theta+alpha)_{k-1,alpha} prod (1-alpha)_{n_j-1} / (theta+1)_{n-1}.
  SpecialValue py = log_pochhammer(theta / a + 1.0, k - 1) * SpecialValue::from_log((k - 1) * std::log(a));
  for (int size : p.block_sizes()) py *= log_pochhammer(1.0 - a, size - 1);
  py /= log_pochhammer(theta + 1.0, n - 1);
  return py * SpecialValue::from_value(ratio);
}

}  // namespace gibbs
