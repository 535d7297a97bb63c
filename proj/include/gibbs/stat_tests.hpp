#ifndef GIBBS_STAT_TESTS_HPP
#define GIBBS_STAT_TESTS_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace gibbs {

struct TestResult {
  double statistic;
  double p_value;
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y| only.
double ks_distance(std::vector<double> xs, std::vector<double> ys);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

/// Pearson goodness-of-fit against a pmf. Adjacent cells are pooled left to
/// right until every pooled expected count is at least `min_expected`.
TestResult chi_square_pmf(const std::vector<std::int64_t>& counts, const std::vector<double>& probs,
                          double min_expected = 5.0);

/// Per-case level that keeps the family-wise failure rate at `overall`.
double bonferroni_level(double overall, std::size_t cases);

}  // namespace gibbs

#endif  // GIBBS_STAT_TESTS_HPP
