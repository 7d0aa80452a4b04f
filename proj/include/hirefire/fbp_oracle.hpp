#pragma once

#include <cstddef>
#include <vector>

#include "hirefire/params.hpp"

namespace hirefire {

/// Finite-difference configuration. The grid is truncated to
/// [lo, hi] strictly inside (0,1) because the diffusion coefficient
/// pi^2 (1-pi)^2 degenerates at the endpoints; boundary data there comes
/// from the analytic near-endpoint behaviour.
struct GridConfig {
  std::size_t points = 4000;
  double lo = 1e-4;
  double hi = 1.0 - 1e-4;
  double relaxation = 1.5;             ///< projected-SOR over-relaxation factor
  std::size_t max_iterations = 100000;  ///< sweep cap before NoConvergence
  double tolerance = 1e-10;            ///< sweep update tolerance
  bool warm_start = true;  ///< active-set tridiagonal warm start before the SOR sweeps
  double contact_tol = 1e-8;  ///< detection margin for the free boundary
};

struct GridSolution {
  std::vector<double> pi_grid;
  std::vector<double> values;
  double boundary_estimate = 0.0;  ///< first grid point with value > obstacle + contact_tol
  double obstacle = 0.0;           ///< payoff at stopping (0 or -epsilon)
  std::size_t iterations = 0;      ///< projected-SOR sweeps performed
  double residual = 0.0;           ///< last sweep's max update
};

/// Solves the employer's variational inequality
///   max( L V + mu0 - c1 + (mu1-mu0) pi , obstacle - V ) = 0,
///   L = (omega^2/2) pi^2 (1-pi)^2 d^2/dpi^2 - r,
/// with V(lo) = obstacle and V(hi) set from the near-1 expansion
/// (mu0 - c1 + (mu1-mu0) hi)/r. Central second differences; an active-set
/// interface search warm-starts projected SOR, which then verifies the
/// fixed point under the configured relaxation/tolerance/cap.
///
/// obstacle must lie in (-(c1-mu0)/r, 0]; points must be >= 1000.
/// Throws NoConvergence (with the last residual) if the sweep cap is hit.
GridSolution solve_employer_vi(const GameParams& params, double obstacle,
                               const GridConfig& cfg);

/// Solves the weak type's linear boundary value problem
///   (omega^2/2) pi^2(1-pi)^2 U'' - omega^2 pi^2 (1-pi) U' - r U + c1 = 0
/// on [b, hi] with U(b) = 0 and U(hi) = c1/r, by one tridiagonal solve.
/// The first-derivative term is discretized upwind (its coefficient is
/// negative) to keep the system an M-matrix.
GridSolution solve_employee_bvp(const GameParams& params, double b, const GridConfig& cfg);

/// max over interior nodes of min(|discrete PDE residual|, value - obstacle);
/// the discrete complementarity defect of a solution.
double max_complementarity_residual(const GridSolution& sol, const GameParams& params);

}  // namespace hirefire
