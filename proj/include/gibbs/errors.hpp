#ifndef GIBBS_ERRORS_HPP
#define GIBBS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gibbs {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series or iteration hit its term cap before the stopping rule fired.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stick sequence did not reach the requested residual within the stick cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tabulated CDF failed to bracket a target quantile.
class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RejectionBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user-declared bound sup h was violated by an observed evaluation.
class InvalidBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Importance resampling collapsed below the effective-sample-size floor.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gibbs

#endif  // GIBBS_ERRORS_HPP
