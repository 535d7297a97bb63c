#include "gibbs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gibbs/errors.hpp"

namespace gibbs::quad {

Result integrate(const Fn& f, double a, double b, double rel_tol, unsigned max_depth) {
  double error = 0.0;
  double l1 = 0.0;
  // Mapped to [0, 1]: the error estimate carries an absolute floor that would
  // otherwise force full refinement on short intervals.
  const double width = b - a;
  auto mapped = [&](double s) { return f(a + width * s); };
  const double value = width * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                   mapped, 0.0, 1.0, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw QuadratureError("non-finite quadrature result");
  return {value, std::abs(width) * error};
}

Result integrate_singular(const Fn& f, double a, double b, double rel_tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1, &levels);
  if (!std::isfinite(value)) throw QuadratureError("non-finite quadrature result");
  return {value, error};
}

Result beta_expectation(const std::function<double(double, double)>& g, double a, double b,
                        double rel_tol) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_expectation: shapes must be positive");
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  // x = (1 + u) / 2; the second argument is the signed distance of u to its nearest end.
  auto mapped = [&](double, double uc) {
    const double x = uc > 0.0 ? 1.0 - 0.5 * uc : -0.5 * uc;
    const double xm = uc > 0.0 ? 0.5 * uc : 1.0 - x;
    if (!(x > 0.0 && xm > 0.0)) return 0.0;
    const double weight = std::exp(log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log(xm));
    if (weight == 0.0) return 0.0;
    const double value = weight * g(x, xm);
    return std::isfinite(value) ? 0.5 * value : 0.0;
  };
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double value = integrator.integrate(mapped, rel_tol, &error, &l1, &levels);
  if (!std::isfinite(value)) throw QuadratureError("non-finite quadrature result");
  return {value, error};
}

double log_integrate(const Fn& log_f, double a, double b, double rel_tol, int scan_points) {
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> xs(scan_points + 1);
  std::vector<double> ls(scan_points + 1);
  int best = 0;
  for (int i = 0; i <= scan_points; ++i) {
    xs[i] = a + (b - a) * i / scan_points;
    ls[i] = log_f(xs[i]);
    if (!std::isfinite(ls[i])) ls[i] = ninf;
    if (ls[i] > ls[best]) best = i;
  }
  const double peak = ls[best];
  if (!std::isfinite(peak)) return ninf;

  auto g = [&](double x) {
    const double l = log_f(x);
    return std::isfinite(l) ? std::exp(l - peak) : 0.0;
  };
  // Break the range at the scan nodes so narrow peaks are never skipped.
  double total = 0.0;
  for (int i = 0; i < scan_points; ++i) {
    // Cells touching the best node may hide the true peak; never skip them.
    if (ls[i] < peak - 60.0 && ls[i + 1] < peak - 60.0 && i != best && i + 1 != best) continue;
    total += integrate(g, xs[i], xs[i + 1], rel_tol, 15).value;
  }
  if (total <= 0.0) return ninf;
  return peak + std::log(total);
}

}  // namespace gibbs::quad
