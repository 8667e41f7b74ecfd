#pragma once

#include <stdexcept>
#include <string>

namespace hybridnoise {

/// A mixture whose retained weight is zero cannot be renormalized or
/// characterized; every weight underflowed or the order is pathological.
class DegenerateMixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncated mixture discards too much Poisson mass for the requested
/// operation to be meaningful (entropy of a badly truncated mixture is not
/// the noise entropy). Callers may override explicitly.
class TruncationInadequateError : public std::runtime_error {
 public:
  TruncationInadequateError(double tail_mass, double threshold)
      : std::runtime_error("truncation inadequate: tail mass " +
                           std::to_string(tail_mass) + " exceeds " +
                           std::to_string(threshold) +
                           " (renormalize with a larger order, or override)"),
        tail_mass(tail_mass),
        threshold(threshold) {}

  double tail_mass;
  double threshold;
};

/// Adaptive quadrature hit the maximum subdivision depth before meeting the
/// requested tolerance. Carries the best estimate obtained so far.
class QuadratureFailureError : public std::runtime_error {
 public:
  QuadratureFailureError(double best_estimate, double error_bound)
      : std::runtime_error("quadrature failed to converge at maximum depth; "
                           "best estimate " + std::to_string(best_estimate) +
                           " with error bound " + std::to_string(error_bound)),
        best_estimate(best_estimate),
        error_bound(error_bound) {}

  double best_estimate;
  double error_bound;
};

/// Poisson rates above the supported desk-scale bound are rejected.
class UnsupportedRateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sample batch was tested against a mixture built from different
/// parameters.
class BatchMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hybridnoise
