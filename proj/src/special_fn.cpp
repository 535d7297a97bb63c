#include "gibbs/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include "gibbs/errors.hpp"
#include "gibbs/quadrature.hpp"
#include "gibbs/stable_table.hpp"

namespace gibbs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log(exp(a) - exp(b)) for a >= b.
double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  return a + std::log1p(-std::exp(b - a));
}

}  // namespace

// ---------------------------------------------------------------------------
// SpecialValue

SpecialValue SpecialValue::from_log(double log_magnitude, int sign) {
  SpecialValue v;
  if (sign == 0 || log_magnitude == kNegInf) return v;
  if (std::isnan(log_magnitude)) throw DomainError("SpecialValue: NaN log magnitude");
  v.log_magnitude_ = log_magnitude;
  v.sign_ = sign > 0 ? 1 : -1;
  return v;
}

SpecialValue SpecialValue::from_value(double value) {
  if (std::isnan(value)) throw DomainError("SpecialValue: NaN value");
  if (value == 0.0) return zero();
  return from_log(std::log(std::abs(value)), value > 0 ? 1 : -1);
}

double SpecialValue::value() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_magnitude_);
}

SpecialValue SpecialValue::operator-() const {
  SpecialValue v = *this;
  v.sign_ = -v.sign_;
  return v;
}

SpecialValue& SpecialValue::operator*=(const SpecialValue& rhs) {
  if (sign_ == 0 || rhs.sign_ == 0) {
    *this = zero();
    return *this;
  }
  log_magnitude_ += rhs.log_magnitude_;
  sign_ *= rhs.sign_;
  return *this;
}

SpecialValue& SpecialValue::operator/=(const SpecialValue& rhs) {
  if (rhs.sign_ == 0) throw DomainError("SpecialValue: division by zero");
  if (sign_ == 0) return *this;
  log_magnitude_ -= rhs.log_magnitude_;
  sign_ *= rhs.sign_;
  return *this;
}

SpecialValue& SpecialValue::operator+=(const SpecialValue& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  if (sign_ == rhs.sign_) {
    log_magnitude_ = log_add(log_magnitude_, rhs.log_magnitude_);
    return *this;
  }
  if (log_magnitude_ == rhs.log_magnitude_) {
    *this = zero();
    return *this;
  }
  if (log_magnitude_ > rhs.log_magnitude_) {
    log_magnitude_ = log_sub(log_magnitude_, rhs.log_magnitude_);
  } else {
    log_magnitude_ = log_sub(rhs.log_magnitude_, log_magnitude_);
    sign_ = rhs.sign_;
  }
  return *this;
}

SpecialValue& SpecialValue::operator-=(const SpecialValue& rhs) { return *this += -rhs; }

// ---------------------------------------------------------------------------

StableParams::StableParams(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("stable index must lie strictly inside (0, 1), got " + std::to_string(alpha));
  }
}

SpecialValue pochhammer(double x, unsigned n) {
  if (n == 0) return SpecialValue::one();
  if (x > 0.0) {
    // Summation keeps log (x)_{n+1} = log (x)_n + log(x+n) exact per step.
    if (n <= 256) {
      double acc = 0.0;
      for (unsigned j = 0; j < n; ++j) acc += std::log(x + j);
      return SpecialValue::from_log(acc);
    }
    return SpecialValue::from_log(std::lgamma(x + n) - std::lgamma(x));
  }
  double acc = 0.0;
  int sign = 1;
  for (unsigned j = 0; j < n; ++j) {
    const double f = x + j;
    if (f == 0.0) return SpecialValue::zero();
    if (f < 0.0) sign = -sign;
    acc += std::log(std::abs(f));
  }
  return SpecialValue::from_log(acc, sign);
}

SpecialValue log_pochhammer(double x, unsigned n) {
  SpecialValue v = pochhammer(x, n);
  if (v.is_zero()) throw DomainError("log_pochhammer: a factor of the rising factorial vanishes");
  return v;
}

// ---------------------------------------------------------------------------
// Stable density

namespace detail {

namespace {

// log(sin(x) / x) for x in [0, pi).
double log_sinc(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return -x2 * (1.0 / 6.0 + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 / 37800.0)));
  }
  return std::log(std::sin(x) / x);
}

}  // namespace

double kanter_log_a(double alpha, double u) {
  return std::log(kanter_a0(alpha)) + kanter_log_a_excess(alpha, u);
}

double kanter_log_a_excess(double alpha, double u) {
  if (u <= 0.0) return 0.0;
  const double la = log_sinc(alpha * u);
  return (la - log_sinc(u)) / (1.0 - alpha) + log_sinc((1.0 - alpha) * u) - la;
}

double kanter_log_a_reflected(double alpha, double v) {
  const double u = std::numbers::pi - v;
  const double sa = std::sin(alpha * u);
  const double s = std::sin(v);
  const double sb = std::sin((1.0 - alpha) * u);
  return (std::log(sa) - std::log(s)) / (1.0 - alpha) + std::log(sb) - std::log(sa);
}

double kanter_a0(double alpha) {
  return std::pow(alpha, alpha / (1.0 - alpha)) * (1.0 - alpha);
}

}  // namespace detail

namespace {

constexpr double kHalfPi = kPi / 2.0;
// Switch to the large-t series once t^{-alpha} drops below this.
constexpr double kSeriesCut = 0.05;

// d(x) = log A - log A(0+) on either half of (0, pi): u in [0, pi/2] on the left,
// v = pi - u on the right.
struct KanterHalves {
  double alpha;
  double log_a0;
  double left(double u) const { return detail::kanter_log_a_excess(alpha, u); }
  double right(double v) const { return detail::kanter_log_a_reflected(alpha, v) - log_a0; }
};

// Integral of exp(rel(x)) over [0, pi/2] with rel <= 0 maximal near x0, grown outward
// in doubling pieces until the integrand falls below exp(-70).
double integrate_half(const quad::Fn& rel, double x0, double width) {
  auto g = [&](double x) {
    const double v = rel(x);
    return std::isfinite(v) ? std::exp(v) : 0.0;
  };
  width = std::clamp(width, 1e-300, kHalfPi);
  double total = 0.0;
  double a = x0;
  for (double w = 0.25 * width; a < kHalfPi; w *= 2.0) {
    const double b = std::min(kHalfPi, x0 + w);
    total += quad::integrate(g, a, b, 1e-13, 8).value;
    a = b;
    if (rel(b) < -70.0) break;
  }
  double b = x0;
  for (double w = 0.25 * width; b > 0.0; w *= 2.0) {
    const double lo = std::max(0.0, x0 - w);
    total += quad::integrate(g, lo, b, 1e-13, 8).value;
    b = lo;
    if (lo > 0.0 && rel(lo) < -70.0) break;
  }
  return total;
}

// Solves f(x) = target on [0, pi/2] for monotone f, to relative precision.
template <class F>
double bisect_half(F f, double target, bool increasing) {
  double lo = 0.0;
  double hi = kHalfPi;
  for (int i = 0; i < 2000; ++i) {
    if (hi - lo <= 1e-15 * hi) break;
    const double mid = 0.5 * (lo + hi);
    const bool below = f(mid) < target;
    if (below == increasing) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Width 1/|d'(x)| by central differences.
template <class F>
double inverse_slope(F d, double x) {
  const double h = 1e-5 * std::max(1e-300, std::min(x, kHalfPi - x));
  const double lo = std::max(0.0, x - h);
  const double s = (d(x + h) - d(lo)) / (x + h - lo);
  return s != 0.0 && std::isfinite(s) ? 1.0 / std::abs(s) : kHalfPi;
}

// Integral over (0, pi) of exp(rel(d(u))) where rel <= 0 is maximal at x_star on the
// selected half.
double kanter_integral(const KanterHalves& k, bool mode_right, double x_star, double sigma,
                       const std::function<double(double)>& rel) {
  auto rel_left = [&](double u) { return rel(k.left(u)); };
  auto rel_right = [&](double v) { return rel(k.right(v)); };
  auto d_left = [&](double u) { return k.left(u); };
  auto d_right = [&](double v) { return k.right(v); };
  if (mode_right) {
    return integrate_half(rel_right, x_star, sigma) +
           integrate_half(rel_left, kHalfPi, inverse_slope(d_left, kHalfPi));
  }
  return integrate_half(rel_left, x_star, sigma) +
         integrate_half(rel_right, kHalfPi, inverse_slope(d_right, kHalfPi));
}

// Large-t expansion sum_k (-1)^{k+1} Gamma(k alpha + shift)/k! sin(k pi alpha) x^k / pi,
// x = t^{-alpha}.
double stable_tail_series(double alpha, double x, double shift) {
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double lg = std::lgamma(k * alpha + shift) - std::lgamma(k + 1.0) + k * std::log(x);
    const double bound = std::exp(lg);
    sum += ((k % 2 == 1) ? 1.0 : -1.0) * std::sin(k * kPi * alpha) * bound;
    if (k > 2 && bound < 1e-17 * std::abs(sum)) break;
  }
  return sum / kPi;
}

// Curvature width at u = 0 of rel = d - C expm1(d) (or -C expm1(d) without the log term).
double width_at_zero(const KanterHalves& k, double log_c, bool with_log) {
  const double h = 1e-3;
  const double d2 = 2.0 * k.left(h) / (h * h);
  const double curv = d2 * (std::exp(k.log_a0 + log_c) - (with_log ? 1.0 : 0.0));
  return curv > 0 ? std::min(kHalfPi, 1.0 / std::sqrt(curv)) : kHalfPi;
}

}  // namespace

double log_stable_pdf_integral(const StableParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("stable_pdf: t must be positive");
  const double alpha = params.alpha();
  const double beta = alpha / (1.0 - alpha);
  const double log_t = std::log(t);
  const double x = std::exp(-alpha * log_t);
  if (x <= kSeriesCut) return std::log(stable_tail_series(alpha, x, 1.0)) - log_t;

  const double log_c = -beta * log_t;
  const KanterHalves k{alpha, std::log(detail::kanter_a0(alpha))};
  // log(C) with C = A(0+) c; the integrand is A c exp(-A c) = exp(log C + d - C e^d).
  const double log_cc = k.log_a0 + log_c;
  if (log_cc > 700.0) return kNegInf;

  // The maximum sits where d = -log C, or at u = 0 when C >= 1.
  const double target = -log_cc;
  bool mode_right = false;
  double x_star = 0.0;
  double sigma = 0.0;
  double d_star = 0.0;
  if (target <= 0.0) {
    sigma = width_at_zero(k, log_c, true);
  } else if (target <= k.left(kHalfPi)) {
    auto d_left = [&](double u) { return k.left(u); };
    x_star = bisect_half(d_left, target, true);
    sigma = inverse_slope(d_left, x_star);
    if (x_star < 1e-3) sigma = std::min(sigma, 1.0);
    d_star = k.left(x_star);
  } else {
    mode_right = true;
    auto d_right = [&](double v) { return k.right(v); };
    x_star = bisect_half(d_right, target, false);
    sigma = inverse_slope(d_right, x_star);
    d_star = k.right(x_star);
  }
  // Peak value and its scale C e^{d*}; rel = (d - d*) - C e^{d*} expm1(d - d*).
  const double log_scale = log_cc + d_star;
  const double scale = std::exp(log_scale);
  const double peak = log_scale - scale;
  auto rel = [d_star, scale](double d) { return (d - d_star) - scale * std::expm1(d - d_star); };
  const double log_int = peak + std::log(kanter_integral(k, mode_right, x_star, sigma, rel));
  return std::log(beta) - log_t - std::log(kPi) + log_int;
}

double log_stable_pdf(const StableParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("stable_pdf: t must be positive");
  if (params.alpha() == 0.5) {
    // Levy density t^{-3/2} exp(-1/(4t)) / (2 sqrt(pi)).
    return -1.5 * std::log(t) - 0.25 / t - std::log(2.0 * std::sqrt(kPi));
  }
  return log_stable_pdf_integral(params, t);
}

double stable_pdf(const StableParams& params, double t) {
  return std::exp(log_stable_pdf(params, t));
}

double stable_cdf(const StableParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("stable_cdf: t must be positive");
  const double alpha = params.alpha();
  const double beta = alpha / (1.0 - alpha);
  const double log_t = std::log(t);
  const double x = std::exp(-alpha * log_t);
  if (x <= kSeriesCut) return 1.0 - stable_tail_series(alpha, x, 0.0);

  const double log_c = -beta * log_t;
  const KanterHalves k{alpha, std::log(detail::kanter_a0(alpha))};
  const double log_cc = k.log_a0 + log_c;
  if (log_cc > 700.0) return 0.0;
  // exp(-C e^d) = exp(-C) exp(-C expm1(d)).
  const double cc = std::exp(log_cc);
  auto rel = [cc](double d) { return -cc * std::expm1(d); };
  const double sigma = width_at_zero(k, log_c, false);
  const double value = std::exp(-cc) * kanter_integral(k, false, 0.0, sigma, rel) / kPi;
  return std::min(1.0, value);
}


double stable_mode(const StableParams& params) {
  // Golden-section search on log t; f_alpha is unimodal.
  double a = -12.0;
  double b = 12.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double z) { return log_stable_pdf(params, std::exp(z)); };
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = f(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

// ---------------------------------------------------------------------------
// Generalized Stirling numbers

SpecialValue gen_stirling_recursive(const StableParams& params, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("gen_stirling: need 1 <= k <= n");
  const double alpha = params.alpha();
  // row[j] holds S(m, j) for the current m; S(m+1,j) = S(m,j-1) + (m - j alpha) S(m,j).
  std::vector<SpecialValue> row(n + 2, SpecialValue::zero());
  row[1] = SpecialValue::one();
  for (int m = 1; m < n; ++m) {
    for (int j = std::min(m + 1, k); j >= 1; --j) {
      SpecialValue next = row[j - 1];
      if (j <= m) next += row[j] * SpecialValue::from_value(m - j * alpha);
      row[j] = next;
    }
  }
  return row[k];
}

SpecialValue gen_stirling(const StableParams& params, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("gen_stirling: need 1 <= k <= n");
  const double alpha = params.alpha();
  std::vector<SpecialValue> terms;
  terms.reserve(k);
  double max_log = kNegInf;
  for (int j = 1; j <= k; ++j) {
    const double log_binom = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
    SpecialValue term = pochhammer(-j * alpha, static_cast<unsigned>(n));
    if (term.is_zero()) continue;
    term *= SpecialValue::from_log(log_binom, (j % 2 == 0) ? 1 : -1);
    max_log = std::max(max_log, term.log_magnitude());
    terms.push_back(term);
  }
  long double sum = 0.0L;
  for (const auto& t : terms) {
    sum += static_cast<long double>(t.sign()) *
           std::exp(static_cast<long double>(t.log_magnitude() - max_log));
  }
  // Fall back to the subtraction-free recursion once three digits cancel.
  constexpr long double kThreeDigits = 1e-3L;
  if (!(sum > kThreeDigits)) return gen_stirling_recursive(params, n, k);
  const double log_norm = k * std::log(alpha) + std::lgamma(k + 1.0);
  return SpecialValue::from_log(max_log + static_cast<double>(std::log(sum)) - log_norm);
}

// ---------------------------------------------------------------------------
// Series

namespace {

constexpr double kSeriesRelTol = 1e-15;
constexpr int kSeriesConsecutive = 3;
constexpr int kSeriesCap = 100000;

using QuadPrecision = boost::multiprecision::float128;
using HighPrecision = boost::multiprecision::cpp_bin_float_100;
using HigherPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<300>>;

// Largest cancellation (in decimal digits) each precision tier absorbs.
constexpr double kDigitsQuad = 14.0;
constexpr double kDigits100 = 75.0;
constexpr double kDigits300 = 270.0;

// Alternating Mittag-Leffler series in extended arithmetic.
template <class Real>
double ml3_extended(double gamma, double alpha, double beta, double lambda) {
  using boost::math::lgamma;
  const Real g(gamma), a(alpha), b(beta), lam(lambda);
  const Real log_gb = lgamma(b) - lgamma(g);
  const Real log_lam = log(lam);
  Real sum = 0;
  Real prev_mag = 0;
  int small = 0;
  for (int l = 0; l < kSeriesCap; ++l) {
    const Real log_term = lgamma(g + l) + l * log_lam - lgamma(Real(l + 1)) + log_gb - lgamma(a * l + b);
    const Real mag = exp(log_term);
    sum += (l % 2 == 0) ? mag : Real(-mag);
    if (l > 0 && mag < prev_mag && mag < kSeriesRelTol * 1e-2 * abs(sum)) {
      if (++small >= kSeriesConsecutive) return static_cast<double>(sum);
    } else {
      small = 0;
    }
    prev_mag = mag;
  }
  throw ConvergenceError("ml3_function: term cap reached");
}

}  // namespace

namespace {

void check_ml3_args(double gamma, double alpha, double beta, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("ml3_function: lambda must be nonnegative");
  if (!(gamma > 0.0 && beta > 0.0 && alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("ml3_function: need gamma > 0, beta > 0, alpha in (0,1)");
  }
}

struct DoubleSeries {
  double sum = 0.0;
  double max_log = kNegInf;
  bool converged = false;
};

DoubleSeries ml3_double(double gamma, double alpha, double beta, double lambda) {
  const double log_lam = std::log(lambda);
  const double log_gb = std::lgamma(beta) - std::lgamma(gamma);
  DoubleSeries out;
  double prev = kNegInf;
  int small = 0;
  for (int l = 0; l < kSeriesCap; ++l) {
    const double log_term = std::lgamma(gamma + l) + l * log_lam - std::lgamma(l + 1.0) + log_gb -
                            std::lgamma(alpha * l + beta);
    if (!std::isfinite(log_term)) throw ConvergenceError("ml3_function: non-finite term");
    out.max_log = std::max(out.max_log, log_term);
    if (out.max_log > kDigits300 * std::log(10.0)) return out;
    const double mag = std::exp(log_term);
    out.sum += (l % 2 == 0) ? mag : -mag;
    if (l > 0 && log_term < prev && mag < kSeriesRelTol * std::abs(out.sum)) {
      if (++small >= kSeriesConsecutive) {
        out.converged = true;
        return out;
      }
    } else {
      small = 0;
    }
    prev = log_term;
  }
  if (out.max_log <= 0.0) throw ConvergenceError("ml3_function: term cap reached");
  return out;
}

bool accurate(const DoubleSeries& series) {
  return series.converged && series.sum > 0.0 && series.max_log - std::log(series.sum) <= 2.0 * std::log(10.0);
}

}  // namespace

double ml3_function_series(double gamma, double alpha, double beta, double lambda) {
  check_ml3_args(gamma, alpha, beta, lambda);
  if (lambda == 0.0) return 1.0;
  const DoubleSeries series = ml3_double(gamma, alpha, beta, lambda);
  // Redo the sum in extended precision when more than two digits are lost against the largest term.
  if (accurate(series)) return series.sum;
  const double ln10 = std::log(10.0);
  if (series.max_log > kDigits300 * ln10) throw ConvergenceError("ml3_function_series: cancellation beyond 270 digits");
  if (series.max_log <= kDigitsQuad * ln10) return ml3_extended<QuadPrecision>(gamma, alpha, beta, lambda);
  if (series.max_log <= kDigits100 * ln10) return ml3_extended<HighPrecision>(gamma, alpha, beta, lambda);
  return ml3_extended<HigherPrecision>(gamma, alpha, beta, lambda);
}

double ml3_function(double gamma, double alpha, double beta, double lambda) {
  check_ml3_args(gamma, alpha, beta, lambda);
  if (lambda == 0.0) return 1.0;
  const DoubleSeries series = ml3_double(gamma, alpha, beta, lambda);
  if (accurate(series)) return series.sum;
  const double tilt = alpha * (gamma - 1.0);
  const bool mixture = beta - tilt - 1.0 >= -1e-12 && tilt <= StableGrid::kMaxTilt;
  if (mixture || series.max_log > kDigits300 * std::log(10.0)) return ml3_function_integral(gamma, alpha, beta, lambda);
  return ml3_function_series(gamma, alpha, beta, lambda);
}

double ml3_function_integral(double gamma, double alpha, double beta, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("ml3_function_integral: lambda must be nonnegative");
  if (!(gamma > 0.0 && alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("ml3_function_integral: need gamma > 0 and alpha in (0,1)");
  }
  // Laplace transform at lambda of B^alpha T_{alpha,theta}^{-alpha}, theta = alpha (gamma - 1),
  // B ~ Beta(theta + 1, beta - theta - 1) independent of T.
  const double theta = alpha * (gamma - 1.0);
  const double shape_b = beta - theta - 1.0;
  if (shape_b < -1e-12) throw ConvergenceError("ml3_function_integral: need beta >= alpha (gamma - 1) + 1");
  if (theta > StableGrid::kMaxTilt) throw ConvergenceError("ml3_function_integral: tilt outside the stable grid");
  const StableParams params(alpha);
  const StableGrid& grid = StableGrid::get(params);
  const std::vector<double>& z = grid.log_t();
  // Node weights of z = log T_{alpha,theta}, peak-scaled, and T^{-alpha} at each node.
  // Nodes below exp(-45) of the peak are dropped.
  std::vector<double> log_weight(z.size());
  double peak = kNegInf;
  for (std::size_t i = 0; i < z.size(); ++i) {
    log_weight[i] = grid.log_density_z()[i] - theta * z[i];
    peak = std::max(peak, log_weight[i]);
  }
  std::vector<double> weight;
  std::vector<double> power;
  double mass = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (log_weight[i] < peak - 45.0) continue;
    weight.push_back(std::exp(log_weight[i] - peak));
    power.push_back(std::exp(-alpha * z[i]));
    mass += weight.back();
  }
  auto transform = [&](double scale) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) sum += weight[i] * std::exp(-scale * power[i]);
    return sum / mass;
  };
  if (shape_b <= 1e-12) return transform(lambda);
  auto integrand = [&](double b, double) { return transform(lambda * std::pow(b, alpha)); };
  return quad::beta_expectation(integrand, theta + 1.0, shape_b, 1e-10).value;
}

// Beyond this argument the positive series needs too many terms.
constexpr double kConfluentSeriesLimit = 500.0;

double hyp1f1_neg(double a, double b, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("hyp1f1_neg: lambda must be nonnegative");
  if (!(b > a && a > 0.0)) throw DomainError("hyp1f1_neg: need b > a > 0");
  if (lambda == 0.0) return 1.0;
  if (lambda > kConfluentSeriesLimit) return boost::math::hypergeometric_1F1(a, b, -lambda);
  // Kummer: 1F1(a;b;-x) = e^{-x} 1F1(b-a;b;x), a series of positive terms.
  const double c = b - a;
  const double log_lam = std::log(lambda);
  double log_term = 0.0;
  double log_sum = 0.0;
  int small = 0;
  for (int l = 0; l < kSeriesCap; ++l) {
    const double next = log_term + std::log(c + l) - std::log(b + l) + log_lam - std::log(l + 1.0);
    log_sum = log_add(log_sum, next);
    if (next < log_term && next - log_sum < std::log(kSeriesRelTol)) {
      if (++small >= kSeriesConsecutive) return std::exp(-lambda + log_sum);
    } else {
      small = 0;
    }
    log_term = next;
  }
  throw ConvergenceError("hyp1f1_neg: term cap reached");
}

SpecialValue neg_moment_stable(const StableParams& params, double theta) {
  if (!(theta > -params.alpha())) throw DomainError("neg_moment_stable: need theta > -alpha");
  return SpecialValue::from_log(std::lgamma(theta / params.alpha() + 1.0) - std::lgamma(theta + 1.0));
}

double log_beta_pdf(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_pdf: shapes must be positive");
  if (!(x > 0.0 && x < 1.0)) return kNegInf;
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - std::lgamma(a) - std::lgamma(b) +
         std::lgamma(a + b);
}

double beta_pdf(double a, double b, double x) { return std::exp(log_beta_pdf(a, b, x)); }

}  // namespace gibbs
