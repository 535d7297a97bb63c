#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <boost/math/distributions/gamma.hpp>

#include "gibbs/errors.hpp"
#include "gibbs/gibbs_model.hpp"
#include "gibbs/quadrature.hpp"
#include "gibbs/samplers.hpp"
#include "gibbs/stat_tests.hpp"

using namespace gibbs;

namespace {

struct MeanSe {
  double mean;
  double se;
};

template <class Draw>
MeanSe mc_mean(RngState& rng, int n, Draw draw) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw(rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  return {mean, std::sqrt((sum_sq / n - mean * mean) / n)};
}

// KS p-value of 1/T against Gamma(theta + 1/2, scale 4) at alpha = 1/2.
double inverse_gamma_oracle(RngState& rng, double theta, int n) {
  const StableParams half(0.5);
  std::vector<double> xs(n);
  for (double& x : xs) x = 1.0 / sample_tilted_stable(rng, half, theta);
  const boost::math::gamma_distribution<double> law(theta + 0.5, 4.0);
  return ks_one_sample(xs, [&](double x) { return boost::math::cdf(law, x); }).p_value;
}

std::vector<std::int64_t> block_count_histogram(const std::vector<int>& ks, int n) {
  std::vector<std::int64_t> counts(n, 0);
  for (int k : ks) ++counts[k - 1];
  return counts;
}

}  // namespace

TEST_CASE("positive stable at alpha one half") {
  RngState rng(101);
  const StableParams half(0.5);
  std::vector<double> xs(100000);
  for (double& x : xs) {
    const double t = sample_positive_stable(rng, half);
    REQUIRE(t > 0.0);
    x = 1.0 / t;
  }
  const boost::math::gamma_distribution<double> law(0.5, 4.0);
  CHECK(ks_one_sample(xs, [&](double x) { return boost::math::cdf(law, x); }).p_value > 0.001);
}

TEST_CASE("positive stable Laplace transform") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    RngState rng(102);
    const StableParams params(alpha);
    const MeanSe lt = mc_mean(rng, 200000, [&](RngState& r) { return std::exp(-sample_positive_stable(r, params)); });
    CHECK(std::abs(lt.mean - std::exp(-1.0)) < 4.0 * lt.se);
  }
}

TEST_CASE("tilted stable at alpha one half") {
  RngState rng(103);
  for (double theta : {-0.25, 0.5, 1.5}) CHECK(inverse_gamma_oracle(rng, theta, 50000) > 0.001);
}

TEST_CASE("tilted stable with no tilt is the stable sampler") {
  const StableParams params(0.4);
  RngState a(104);
  RngState b(104);
  for (int i = 0; i < 100; ++i) REQUIRE(sample_tilted_stable(a, params, 0.0) == sample_positive_stable(b, params));
}

TEST_CASE("tilted stable negative moment") {
  // E[T_{1/2,1}^{-1}] = E[T^{-2}] / E[T^{-1}] = 12 / 2.
  RngState rng(105);
  const StableParams half(0.5);
  const MeanSe m = mc_mean(rng, 200000, [&](RngState& r) { return 1.0 / sample_tilted_stable(r, half, 1.0); });
  CHECK(std::abs(m.mean - 6.0) < 4.0 * m.se);
  CHECK_THROWS_AS(sample_tilted_stable(rng, half, -0.5), DomainError);
}

TEST_CASE("exponentially tilted stable Laplace transform") {
  RngState rng(106);
  const StableParams params(0.6);
  const double lambda = 1.5;
  const MeanSe lt =
      mc_mean(rng, 200000, [&](RngState& r) { return std::exp(-sample_exp_tilted_stable(r, params, lambda)); });
  const double exact = std::exp(std::pow(lambda, 0.6) - std::pow(lambda + 1.0, 0.6));
  CHECK(std::abs(lt.mean - exact) < 4.0 * lt.se);
}

TEST_CASE("Dirichlet draws") {
  RngState rng(107);
  CHECK(sample_dirichlet(rng, {1.0}) == std::vector<double>{1.0});
  const MeanSe first = mc_mean(rng, 100000, [](RngState& r) { return sample_dirichlet(r, {2.0, 3.0})[0]; });
  CHECK(std::abs(first.mean - 0.4) < 4.0 * first.se);
  std::vector<double> us(50000);
  for (double& u : us) u = sample_dirichlet(rng, {1.0, 1.0})[0];
  CHECK(ks_one_sample(us, [](double x) { return x; }).p_value > 0.001);
  const std::vector<double> tiny = sample_dirichlet(rng, {1e-3, 1e-3, 1e-3});
  CHECK(tiny[0] + tiny[1] + tiny[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(sample_dirichlet(rng, {1.0, 0.0}), DomainError);
}

TEST_CASE("GEM sticks") {
  RngState rng(108);
  const StableParams params(0.3);
  const double theta = 1.0;
  for (int i = 0; i < 200; ++i) {
    const StickWeights sticks = sample_gem_py(rng, params, theta, 1e-6);
    double total = sticks.residual;
    for (double w : sticks.weights) {
      REQUIRE((w > 0.0 && w < 1.0));
      total += w;
    }
    REQUIRE(sticks.residual <= 1e-6);
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  const MeanSe w1 = mc_mean(rng, 100000, [&](RngState& r) { return sample_gem_py(r, params, theta, 0.5).weights[0]; });
  CHECK(std::abs(w1.mean - (1.0 - 0.3) / (1.0 + theta)) < 4.0 * w1.se);
}

TEST_CASE("GEM sticks seat customers by the Pitman-Yor block-count law") {
  const StableParams params(0.5);
  const GibbsModel model(0.5, PitmanYor{0.5});
  const int n = 6;
  RngState rng(109);
  std::vector<int> ks;
  for (int i = 0; i < 50000; ++i) {
    LazySticks sticks = LazySticks::gem(params, 0.5);
    for (int c = 0; c < n; ++c) sticks.draw_index(rng);
    ks.push_back(static_cast<int>(sticks.revealed()));
  }
  CHECK(chi_square_pmf(block_count_histogram(ks, n), k_pmf(model, n)).p_value > 0.001);
}

TEST_CASE("PD(alpha | t) sticks") {
  const StableParams params(0.5);
  RngState rng(110);
  for (double t : {0.3, 1.0, 4.0}) {
    const StickWeights sticks = sample_pd_given_total(rng, params, t, 1e-3);
    double total = sticks.residual;
    for (double w : sticks.weights) {
      REQUIRE((w > 0.0 && w < 1.0));
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sticks.residual <= 1e-3);
  }
  CHECK_THROWS_AS(sample_pd_given_total(rng, StableParams(0.9), 1.0, 1e-6, 100), TruncationError);
}

TEST_CASE("PD(alpha | t) mixed over t is PD(alpha, 0)") {
  const StableParams params(0.5);
  const GibbsModel model(0.5, PitmanYor{0.0});
  const int n = 5;
  RngState rng(111);
  std::vector<int> ks;
  for (int i = 0; i < 20000; ++i) {
    LazySticks sticks = LazySticks::pd_given_total(params, sample_positive_stable(rng, params));
    for (int c = 0; c < n; ++c) sticks.draw_index(rng);
    ks.push_back(static_cast<int>(sticks.revealed()));
  }
  CHECK(chi_square_pmf(block_count_histogram(ks, n), k_pmf(model, n)).p_value > 0.001);
}

TEST_CASE("lazy sticks reveal one stick per residual landing") {
  const StableParams params(0.3);
  RngState rng(112);
  LazySticks sticks = LazySticks::pd_given_total(params, 2.0);
  CHECK(sticks.revealed() == 0);
  CHECK(sticks.draw_index(rng) == 0);
  CHECK(sticks.revealed() == 1);
  sticks.reveal_until(rng, 1e-6);
  CHECK(sticks.residual() <= 1e-6);
  double total = sticks.residual();
  for (double w : sticks.weights()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first-pick density normalizes") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    const StableParams params(alpha);
    for (double t : {0.2, 1.0, 5.0}) {
      const double mass =
          quad::integrate_singular([&](double v) { return pd_first_pick_density(params, t, v); }, 0.0, 1.0, 1e-9).value;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("mixing variable of the built-in families") {
  RngState rng(113);
  const GibbsModel gg(0.5, GeneralizedGamma{1.0});
  const MeanSe lt = mc_mean(rng, 200000, [&](RngState& r) { return std::exp(-sample_mixing_T(r, gg)); });
  CHECK(std::abs(lt.mean - std::exp(1.0 - std::sqrt(2.0))) < 4.0 * lt.se);

  // Mittag-Leffler T reweights the Pitman-Yor law by exp(-lambda t^-alpha), so this mean is the inverse normalizer.
  const double lambda = 1.0;
  const double theta = 0.5;
  const GibbsModel ml(0.5, MittagLefflerTilt{lambda, theta, 0});
  const MeanSe inverse =
      mc_mean(rng, 200000, [&](RngState& r) { return std::exp(lambda / std::sqrt(sample_mixing_T(r, ml))); });
  const double normalizer = ml3_function(theta / 0.5 + 1.0, 0.5, theta + 1.0, lambda);
  CHECK(std::abs(inverse.mean - 1.0 / normalizer) < 4.0 * inverse.se);
}

TEST_CASE("custom families need a valid bound") {
  RngState rng(114);
  const GibbsModel bad(0.5, Custom{"too-small", [](double) { return 1.0; }, 0.5});
  CHECK_THROWS_AS(sample_mixing_T(rng, bad), InvalidBoundError);
  const GibbsModel unit(0.5, unit_custom());
  CHECK(sample_mixing_T(rng, unit) > 0.0);
}
