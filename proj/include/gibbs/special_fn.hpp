#ifndef GIBBS_SPECIAL_FN_HPP
#define GIBBS_SPECIAL_FN_HPP

#include <cmath>
#include <limits>

namespace gibbs {

/// Signed real carried on the log scale: value = sign * exp(log_magnitude).
///
/// Every Gamma-ratio in the library (Pochhammer symbols, Stirling numbers,
/// Gibbs weights, stable moments) is produced as a SpecialValue so that
/// products over moderate n never overflow double precision.
class SpecialValue {
 public:
  constexpr SpecialValue() = default;

  static SpecialValue zero() { return SpecialValue(); }
  static SpecialValue one() { return from_log(0.0); }
  static SpecialValue from_log(double log_magnitude, int sign = 1);
  static SpecialValue from_value(double value);

  double log_magnitude() const { return log_magnitude_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double value() const;

  SpecialValue operator-() const;
  SpecialValue& operator*=(const SpecialValue& rhs);
  SpecialValue& operator/=(const SpecialValue& rhs);
  SpecialValue& operator+=(const SpecialValue& rhs);
  SpecialValue& operator-=(const SpecialValue& rhs);

  friend SpecialValue operator*(SpecialValue a, const SpecialValue& b) { return a *= b; }
  friend SpecialValue operator/(SpecialValue a, const SpecialValue& b) { return a /= b; }
  friend SpecialValue operator+(SpecialValue a, const SpecialValue& b) { return a += b; }
  friend SpecialValue operator-(SpecialValue a, const SpecialValue& b) { return a -= b; }

 private:
  double log_magnitude_ = -std::numeric_limits<double>::infinity();
  int sign_ = 0;
};

/// Index of a positive stable law, strictly inside (0, 1).
class StableParams {
 public:
  explicit StableParams(double alpha);
  double alpha() const { return alpha_; }
  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double alpha_;
};

/// log of the rising factorial (x)_n = Gamma(x+n)/Gamma(x).
/// Negative x is accepted as long as no factor x+j vanishes.
SpecialValue log_pochhammer(double x, unsigned n);

/// Same as log_pochhammer but returns zero instead of throwing when a factor vanishes.
SpecialValue pochhammer(double x, unsigned n);

/// Density of the positive stable law with E[exp(-s T)] = exp(-s^alpha).
double stable_pdf(const StableParams& params, double t);
double log_stable_pdf(const StableParams& params, double t);

/// The single-integral route for the stable density with no closed-form shortcut.
double log_stable_pdf_integral(const StableParams& params, double t);

double stable_cdf(const StableParams& params, double t);

/// Mode of f_alpha, located numerically.
double stable_mode(const StableParams& params);

/// Generalized Stirling number S_alpha(n, k) (second kind, alpha-deformed).
SpecialValue gen_stirling(const StableParams& params, int n, int k);

/// Subtraction-free triangular recursion for S_alpha(n, k).
SpecialValue gen_stirling_recursive(const StableParams& params, int n, int k);

/// Normalized three-parameter Mittag-Leffler series
/// Gamma(beta) * sum_l (gamma)_l (-lambda)^l / (l! Gamma(alpha l + beta)),
/// which equals 1 at lambda = 0. A cancelling series is replaced by the
/// Beta-mixture integral where it applies.
double ml3_function(double gamma, double alpha, double beta, double lambda);

/// The series alone, summed in extended precision when it cancels; throws
/// ConvergenceError beyond 270 digits of cancellation.
double ml3_function_series(double gamma, double alpha, double beta, double lambda);

/// The same function as a Beta-mixed stable Laplace transform, evaluated by
/// quadrature; needs beta >= alpha (gamma - 1) + 1.
double ml3_function_integral(double gamma, double alpha, double beta, double lambda);

/// Confluent hypergeometric 1F1(a; b; -lambda) for lambda >= 0.
double hyp1f1_neg(double a, double b, double lambda);

/// E[T_alpha^{-theta}] = Gamma(theta/alpha + 1) / Gamma(theta + 1), theta > -alpha.
SpecialValue neg_moment_stable(const StableParams& params, double theta);

double log_beta_pdf(double a, double b, double x);
double beta_pdf(double a, double b, double x);

namespace detail {

// log of the Zolotarev/Kanter kernel A(u) on (0, pi).
double kanter_log_a(double alpha, double u);
// A(0+) = alpha^{alpha/(1-alpha)} (1 - alpha).
double kanter_a0(double alpha);
// log A(u) - log A(0+), accurate near u = 0.
double kanter_log_a_excess(double alpha, double u);
// log A(pi - v), accurate for small v.
double kanter_log_a_reflected(double alpha, double v);

}  // namespace detail

}  // namespace gibbs

#endif  // GIBBS_SPECIAL_FN_HPP
