#ifndef GIBBS_QUADRATURE_HPP
#define GIBBS_QUADRATURE_HPP

#include <functional>

namespace gibbs::quad {

using Fn = std::function<double(double)>;

struct Result {
  double value;
  double error;
};

/// Adaptive Gauss-Kronrod (61-point) on a finite interval.
Result integrate(const Fn& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 18);

/// Tanh-sinh on a finite interval; tolerates integrable endpoint singularities.
Result integrate_singular(const Fn& f, double a, double b, double rel_tol = 1e-12);

/// E[g(B)] for B ~ Beta(a, b) by tanh-sinh.
///
/// g receives x and 1 - x, both to full relative precision near the endpoints.
Result beta_expectation(const std::function<double(double, double)>& g, double a, double b,
                        double rel_tol = 1e-12);

/// log of the integral of exp(log_f) over [a, b].
///
/// The integrand is scanned on a coarse grid to locate its peak, rescaled by
/// the peak value and integrated piecewise around it, so arbitrarily small or
/// large integrands are handled without underflow.
double log_integrate(const Fn& log_f, double a, double b, double rel_tol = 1e-13,
                     int scan_points = 64);

}  // namespace gibbs::quad

#endif  // GIBBS_QUADRATURE_HPP
