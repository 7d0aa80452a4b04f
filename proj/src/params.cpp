#include "hirefire/params.hpp"

#include <cmath>
#include <sstream>

#include "hirefire/errors.hpp"

namespace hirefire {

namespace {

[[noreturn]] void fail_domain(const char* name, double value, const char* constraint) {
  std::ostringstream os;
  os << "domain violation: " << name << " = " << value << " must satisfy " << constraint;
  throw DomainViolation(os.str());
}

[[noreturn]] void fail_ordering(const char* inequality, const char* lhs_name, double lhs,
                                const char* rhs_name, double rhs) {
  std::ostringstream os;
  os << "parameter ordering 0 < c0 <= mu0 < c1 < mu1 violated: requires " << inequality
     << " but " << lhs_name << " = " << lhs << ", " << rhs_name << " = " << rhs;
  throw OrderingViolation(os.str());
}

}  // namespace

GameParams validate_params(double mu0, double mu1, double sigma, double p, double r,
                           double c0, double c1) {
  if (!(sigma > 0.0)) fail_domain("sigma", sigma, "sigma > 0");
  if (!(r > 0.0)) fail_domain("r", r, "r > 0");
  if (!(p > 0.0 && p < 1.0)) fail_domain("p", p, "0 < p < 1");
  if (!std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(sigma) ||
      !std::isfinite(r) || !std::isfinite(c0) || !std::isfinite(c1)) {
    throw DomainViolation("domain violation: all parameters must be finite");
  }
  // Standing ordering 0 < c0 <= mu0 < c1 < mu1. The reversed regime
  // mu0 < c0 is rejected here as well (second check).
  if (!(c0 > 0.0)) fail_ordering("0 < c0", "0", 0.0, "c0", c0);
  if (!(c0 <= mu0)) fail_ordering("c0 <= mu0", "c0", c0, "mu0", mu0);
  if (!(mu0 < c1)) fail_ordering("mu0 < c1", "mu0", mu0, "c1", c1);
  if (!(c1 < mu1)) fail_ordering("c1 < mu1", "c1", c1, "mu1", mu1);
  return GameParams{mu0, mu1, sigma, p, r, c0, c1};
}

DerivedQuantities derived_quantities(const GameParams& params) {
  const double omega = (params.mu1 - params.mu0) / params.sigma;
  const double q = 2.0 * params.r / (omega * omega);
  const double gamma2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * q));
  const double gamma1 = -q / gamma2;  // product of roots is -q
  return DerivedQuantities{omega, gamma1, gamma2};
}

}  // namespace hirefire
