#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gibbs/errors.hpp"
#include "gibbs/quadrature.hpp"
#include "gibbs/special_fn.hpp"

using namespace gibbs;

namespace {

double integrate_stable(const StableParams& params, const std::function<double(double)>& g) {
  // t = exp(z) over a range that holds all but a negligible part of the mass.
  auto integrand = [&](double z) {
    const double t = std::exp(z);
    return g(t) * stable_pdf(params, t) * t;
  };
  double total = 0.0;
  for (double z = -20.0; z < 100.0; z += 4.0) total += quad::integrate(integrand, z, z + 4.0, 1e-11).value;
  return total;
}

}  // namespace

TEST_CASE("log_pochhammer oracles") {
  CHECK(log_pochhammer(0.5, 0).log_magnitude() == 0.0);
  CHECK(log_pochhammer(0.5, 3).value() == doctest::Approx(1.875).epsilon(1e-15));
  CHECK(log_pochhammer(1.0, 5).log_magnitude() == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  for (unsigned n = 0; n < 40; ++n) {
    const double step = log_pochhammer(2.5, n + 1).log_magnitude() - log_pochhammer(2.5, n).log_magnitude();
    CHECK(step == doctest::Approx(std::log(2.5 + n)).epsilon(1e-13));
  }
}

TEST_CASE("pochhammer with a vanishing factor") {
  CHECK(pochhammer(-2.0, 4).is_zero());
  CHECK_THROWS_AS(log_pochhammer(-2.0, 4), DomainError);
  CHECK(log_pochhammer(-0.5, 2).value() == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("SpecialValue arithmetic keeps signs") {
  const SpecialValue a = SpecialValue::from_value(3.0);
  const SpecialValue b = SpecialValue::from_value(-5.0);
  CHECK((a + b).value() == doctest::Approx(-2.0));
  CHECK((a - b).value() == doctest::Approx(8.0));
  CHECK((a * b).value() == doctest::Approx(-15.0));
  CHECK((b / a).value() == doctest::Approx(-5.0 / 3.0));
  CHECK((a - a).is_zero());
  const SpecialValue huge = SpecialValue::from_log(1e4);
  CHECK((huge / huge).value() == doctest::Approx(1.0));
}

TEST_CASE("stable density at alpha one half matches the Levy closed form") {
  const StableParams half(0.5);
  CHECK(stable_pdf(half, 1.0) == doctest::Approx(std::exp(-0.25) / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-12));
  for (double t : {0.01, 0.3, 2.0, 50.0}) {
    const double exact = std::pow(t, -1.5) * std::exp(-1.0 / (4.0 * t)) / (2.0 * std::sqrt(std::numbers::pi));
    CHECK(std::exp(log_stable_pdf_integral(half, t)) == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK(stable_pdf(half, 1e-4) < 1e-300);
}

TEST_CASE("stable density normalizes and has the stable Laplace transform") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    const StableParams params(alpha);
    CHECK(integrate_stable(params, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-8));
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double transform = integrate_stable(params, [&](double t) { return std::exp(-lambda * t); });
      CHECK(transform == doctest::Approx(std::exp(-std::pow(lambda, alpha))).epsilon(1e-6));
    }
  }
}

TEST_CASE("stable cdf and mode") {
  const StableParams half(0.5);
  // 1/T ~ Gamma(1/2, scale 4), so P(T <= t) = erfc(1 / (2 sqrt t)).
  for (double t : {0.1, 1.0, 10.0}) CHECK(stable_cdf(half, t) == doctest::Approx(std::erfc(0.5 / std::sqrt(t))).epsilon(1e-8));
  CHECK(stable_mode(half) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
}

TEST_CASE("generalized Stirling numbers") {
  const StableParams half(0.5);
  CHECK(gen_stirling(half, 1, 1).value() == doctest::Approx(1.0));
  CHECK(gen_stirling(half, 3, 2).value() == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(gen_stirling(half, 3, 3).value() == doctest::Approx(1.0).epsilon(1e-13));
  for (double alpha : {0.1, 0.5, 0.9}) {
    const StableParams params(alpha);
    for (int n = 1; n <= 12; ++n) {
      double total = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double closed = gen_stirling(params, n, k).value();
        CHECK(closed == doctest::Approx(gen_stirling_recursive(params, n, k).value()).epsilon(1e-9));
        total += std::exp((k - 1) * std::log(alpha) + std::lgamma(k) - std::lgamma(n)) * closed;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("three-parameter Mittag-Leffler function") {
  CHECK(ml3_function(2.3, 0.4, 1.7, 0.0) == 1.0);
  // E_{1/2}(-x) = exp(x^2) erfc(x).
  for (double x : {0.5, 2.0, 5.0}) CHECK(ml3_function(1.0, 0.5, 1.0, x) == doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-10));
  // alpha = 1/2, theta = 0: E[exp(-|Z|)] with Z ~ N(0, 2), which is e erfc(1).
  CHECK(ml3_function(1.0, 0.5, 1.0, 1.0) == doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-12));
  double previous = 1.0;
  for (double lambda = 0.25; lambda < 20.0; lambda += 0.25) {
    const double value = ml3_function(3.0, 0.3, 2.0, lambda);
    CHECK(value <= previous);
    previous = value;
  }
  for (auto [gamma, beta] : {std::pair{2.0, 2.0}, {4.0, 3.5}}) {
    const double series = ml3_function(gamma, 0.5, beta, 1.5);
    CHECK(ml3_function_integral(gamma, 0.5, beta, 1.5) == doctest::Approx(series).epsilon(1e-8));
  }
}

TEST_CASE("confluent hypergeometric function") {
  CHECK(hyp1f1_neg(0.7, 1.9, 0.0) == 1.0);
  CHECK(hyp1f1_neg(1.0, 2.0, 2.0) == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-14));
  // E[exp(-B)] for B ~ Beta(0.5, 1), by quadrature.
  const double mean = quad::beta_expectation([](double x, double) { return std::exp(-x); }, 0.5, 1.0).value;
  CHECK(hyp1f1_neg(0.5, 1.5, 1.0) == doctest::Approx(mean).epsilon(1e-12));
  CHECK(hyp1f1_neg(2.0, 5.0, 800.0) > 0.0);
  CHECK(hyp1f1_neg(2.0, 5.0, 800.0) < hyp1f1_neg(2.0, 5.0, 400.0));
}

TEST_CASE("negative moments of the stable law") {
  const StableParams half(0.5);
  CHECK(neg_moment_stable(half, 0.0).value() == doctest::Approx(1.0));
  CHECK(neg_moment_stable(half, 1.0).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(neg_moment_stable(half, 2.0).value() == doctest::Approx(12.0).epsilon(1e-14));
  const double numeric = integrate_stable(half, [](double t) { return 1.0 / t; });
  CHECK(numeric == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(neg_moment_stable(half, -0.5), DomainError);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(StableParams(1.0), DomainError);
  CHECK_THROWS_AS(StableParams(0.0), DomainError);
  CHECK_THROWS_AS(gen_stirling(StableParams(0.5), 3, 4), DomainError);
  CHECK_THROWS_AS(beta_pdf(-1.0, 1.0, 0.5), DomainError);
}
