#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hirefire {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A primitive parameter is outside its admissible domain (sigma <= 0, p not
/// in (0,1), ...).
struct DomainViolation : Error {
  using Error::Error;
};

/// The standing parameter ordering 0 < c0 <= mu0 < c1 < mu1 fails; the
/// message names the violated inequality.
struct OrderingViolation : Error {
  using Error::Error;
};

/// Simulation / estimator configuration is unusable (dt <= 0, too few paths,
/// wrong measure, ...).
struct ConfigViolation : Error {
  using Error::Error;
};

/// A modelling assumption required by an extension fails (e.g. q <= p_hat in
/// the type-uncertainty extension).
struct AssumptionViolation : Error {
  using Error::Error;
};

/// An operation that only makes sense in one equilibrium regime was invoked
/// in the other.
struct RegimeMismatch : Error {
  using Error::Error;
};

/// A filter was requested from a path that carries no observation values.
struct MissingObservations : Error {
  using Error::Error;
};

/// Iterative solver hit its iteration cap; carries the last residual.
struct NoConvergence : Error {
  NoConvergence(const std::string& what, double residual_, std::size_t iterations_)
      : Error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  std::size_t iterations;
};

/// Tridiagonal elimination met a vanishing pivot.
struct SingularSystem : Error {
  using Error::Error;
};

}  // namespace hirefire
