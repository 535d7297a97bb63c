#include "gibbs/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "gibbs/errors.hpp"

namespace gibbs {

double kolmogorov_sf(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Theta-function form, fast for small x.
    const double pi = 3.14159265358979323846;
    const double c = pi * pi / (8.0 * x * x);
    double sum = 0.0;
    for (int j = 1; j <= 41; j += 2) sum += std::exp(-c * j * j);
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_sf((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

double ks_distance(std::vector<double> xs, std::vector<double> ys) {
  if (xs.empty() || ys.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  return d;
}

TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  const double d = ks_distance(std::move(xs), std::move(ys));
  return {d, ks_p_value(d, nx * ny / (nx + ny))};
}

TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw DomainError("ks_one_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, ks_p_value(d, n)};
}

TestResult chi_square_pmf(const std::vector<std::int64_t>& counts, const std::vector<double>& probs,
                          double min_expected) {
  if (counts.size() != probs.size() || counts.empty()) throw DomainError("chi_square_pmf: dimension mismatch");
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(mass - 1.0) > 1e-9) throw DomainError("chi_square_pmf: probabilities do not sum to one");
  for (double p : probs) {
    if (p < 0.0) throw DomainError("chi_square_pmf: negative probability");
  }
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
  if (total <= 0.0) throw DomainError("chi_square_pmf: no observations");

  std::vector<double> observed;
  std::vector<double> expected;
  double obs = 0.0;
  double exp = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    obs += static_cast<double>(counts[i]);
    exp += total * probs[i];
    if (exp >= min_expected) {
      observed.push_back(obs);
      expected.push_back(exp);
      obs = 0.0;
      exp = 0.0;
    }
  }
  if (exp > 0.0 || obs > 0.0) {
    if (expected.empty()) {
      observed.push_back(obs);
      expected.push_back(exp);
    } else {
      observed.back() += obs;
      expected.back() += exp;
    }
  }
  if (expected.size() < 2) return {0.0, 1.0};
  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const double df = static_cast<double>(expected.size() - 1);
  return {stat, boost::math::gamma_q(df / 2.0, stat / 2.0)};
}

double bonferroni_level(double overall, std::size_t cases) {
  if (cases == 0) throw DomainError("bonferroni_level: no cases");
  return overall / static_cast<double>(cases);
}

}  // namespace gibbs
