#pragma once

namespace hirefire {

/// The seven primitive constants of the hiring game.
///
/// Units: mu0, mu1, c0, c1 are payoff rates (payoff units per unit time),
/// sigma is observation noise volatility (payoff units per sqrt(time)),
/// r is a discount rate (1/time), p is a probability.
///
/// Instances are only produced by validate_params(), which enforces the
/// standing ordering 0 < c0 <= mu0 < c1 < mu1 together with sigma > 0,
/// r > 0 and p in (0,1).
struct GameParams {
  double mu0;    ///< drift of the weak type
  double mu1;    ///< drift of the strong type
  double sigma;  ///< observation noise volatility, > 0
  double p;      ///< prior probability of the strong type, in (0,1)
  double r;      ///< discount rate, > 0
  double c0;     ///< low salary rate
  double c1;     ///< high salary rate
};

/// Constants derived from GameParams that every other module consumes.
struct DerivedQuantities {
  double omega;   ///< signal-to-noise ratio (mu1 - mu0) / sigma, > 0
  double gamma1;  ///< negative root of gamma^2 - gamma - 2r/omega^2 = 0
  double gamma2;  ///< positive root (> 1); gamma1 + gamma2 = 1
};

/// Validates the seven primitives and returns them as a GameParams.
///
/// Throws DomainViolation if sigma <= 0, r <= 0 or p is not in the open
/// interval (0,1), and OrderingViolation naming the violated inequality if
/// the ordering 0 < c0 <= mu0 < c1 < mu1 fails. Equality c0 = mu0 is
/// accepted; c1 = mu1 is rejected. NaNs fail the corresponding check.
GameParams validate_params(double mu0, double mu1, double sigma, double p,
                           double r, double c0, double c1);

/// Computes omega and the quadratic roots gamma1 < 0 < 1 < gamma2.
///
/// The larger-magnitude root gamma2 = (1 + sqrt(1 + 8r/omega^2))/2 is
/// computed directly; gamma1 is recovered from the product relation
/// gamma1 * gamma2 = -2r/omega^2 to avoid cancellation when 8r/omega^2
/// is tiny.
DerivedQuantities derived_quantities(const GameParams& params);

}  // namespace hirefire
