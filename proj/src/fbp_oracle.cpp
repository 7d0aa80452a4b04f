#include "hirefire/fbp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hirefire/errors.hpp"

namespace hirefire {

namespace {

// Thomas elimination for a tridiagonal system with sub/main/super diagonals
// (a, b, c) and right-hand side rhs, all of size n. Overwrites rhs with the
// solution.
void solve_tridiagonal(std::vector<double>& a, std::vector<double>& b,
                       std::vector<double>& c, std::vector<double>& rhs) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (b[i - 1] == 0.0) throw SingularSystem("tridiagonal solve: zero pivot");
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (b[n - 1] == 0.0) throw SingularSystem("tridiagonal solve: zero pivot");
  rhs[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - c[i] * rhs[i + 1]) / b[i];
}

struct EmployerDiscretization {
  std::vector<double> pi, diffusion, source;
  double h;
};

EmployerDiscretization employer_grid(const GameParams& gp, const GridConfig& cfg) {
  const DerivedQuantities d = derived_quantities(gp);
  EmployerDiscretization g;
  const std::size_t m = cfg.points;
  g.h = (cfg.hi - cfg.lo) / static_cast<double>(m - 1);
  g.pi.resize(m);
  g.diffusion.resize(m);
  g.source.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double pi = cfg.lo + static_cast<double>(i) * g.h;
    g.pi[i] = pi;
    g.diffusion[i] = 0.5 * d.omega * d.omega * pi * pi * (1.0 - pi) * (1.0 - pi);
    g.source[i] = gp.mu0 - gp.c1 + (gp.mu1 - gp.mu0) * pi;
  }
  return g;
}

// Solves the unconstrained PDE on nodes (j, m-1) with Dirichlet data
// V_j = obstacle and V_{m-1} fixed, writing the result into v.
void solve_continuation_region(const EmployerDiscretization& g, const GameParams& gp,
                               double obstacle, std::size_t j, std::vector<double>& v) {
  const std::size_t m = g.pi.size();
  std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j) + 1, obstacle);
  if (j + 2 >= m) return;  // no interior unknowns
  const std::size_t n = m - j - 2;  // unknowns j+1 .. m-2
  const double h2 = g.h * g.h;
  std::vector<double> sub(n), diag(n), sup(n), rhs(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t i = j + 1 + t;
    const double lam = g.diffusion[i] / h2;
    sub[t] = lam;
    sup[t] = lam;
    diag[t] = -(2.0 * lam + gp.r);
    rhs[t] = -g.source[i];
  }
  rhs[0] -= sub[0] * obstacle;
  rhs[n - 1] -= sup[n - 1] * v[m - 1];
  solve_tridiagonal(sub, diag, sup, rhs);
  for (std::size_t t = 0; t < n; ++t) v[j + 1 + t] = rhs[t];
}

// The free boundary sits at most one cell left of the first node clearing
// the obstacle by contact_tol. Smooth fit makes the value leave the
// obstacle quadratically, V - obstacle ~ M (pi - b)^2 / 2, so the two
// leading non-contact values pin b to sub-grid accuracy without consulting
// any closed form.
double detect_boundary(const GridSolution& sol, double contact_tol) {
  const std::size_t m = sol.values.size();
  std::size_t i = m;
  for (std::size_t k = 0; k < m; ++k) {
    if (sol.values[k] > sol.obstacle + contact_tol) {
      i = k;
      break;
    }
  }
  if (i == m) return sol.pi_grid.back();
  // Anchor a couple of cells past the detection node, where the values are
  // well clear of the detection tolerance; the pair (i1, i2) then sits at
  // grid-proportional distances from b and the estimate converges ~ h^2.
  const std::size_t i1 = i + 2;
  const std::size_t i2 = i + 4;
  if (i == 0 || i2 >= m) return sol.pi_grid[i];
  const double v1 = sol.values[i1] - sol.obstacle;
  const double v2 = sol.values[i2] - sol.obstacle;
  if (!(v2 > v1) || !(v1 > 0.0)) return sol.pi_grid[i];
  const double s = std::sqrt(v1 / v2);  // (pi_i1 - b) / (pi_i2 - b)
  double refined = (sol.pi_grid[i1] - s * sol.pi_grid[i2]) / (1.0 - s);
  const double h = sol.pi_grid[1] - sol.pi_grid[0];
  refined = std::min(refined, sol.pi_grid[i]);
  refined = std::max(refined, sol.pi_grid[i] - 2.0 * h);
  return refined;
}

}  // namespace

GridSolution solve_employer_vi(const GameParams& gp, double obstacle, const GridConfig& cfg) {
  if (cfg.points < 1000)
    throw ConfigViolation("employer VI grid needs at least 1000 points");
  if (!(cfg.lo > 0.0 && cfg.lo < cfg.hi && cfg.hi < 1.0))
    throw ConfigViolation("grid must satisfy 0 < lo < hi < 1");
  const double max_loss = (gp.c1 - gp.mu0) / gp.r;
  if (!(obstacle <= 0.0 && obstacle > -max_loss))
    throw ConfigViolation("obstacle must lie in (-(c1-mu0)/r, 0]");

  const EmployerDiscretization g = employer_grid(gp, cfg);
  const std::size_t m = cfg.points;

  GridSolution sol;
  sol.pi_grid = g.pi;
  sol.obstacle = obstacle;
  sol.values.assign(m, obstacle);
  sol.values[m - 1] = g.source[m - 1] / gp.r;  // near-1 expansion of the value

  if (cfg.warm_start) {
    // The contact set is an interval [lo, boundary]. Find the smallest
    // interface index whose continuation solve stays above the obstacle;
    // below it the forced continuation region dips under the obstacle.
    std::vector<double> trial(m);
    trial[m - 1] = sol.values[m - 1];
    const double dip_slack = 1e-12 * (std::abs(obstacle) + 1.0);
    std::size_t lo_j = 1, hi_j = m - 2;
    auto admissible = [&](std::size_t j) {
      solve_continuation_region(g, gp, obstacle, j, trial);
      for (std::size_t i = j + 1; i + 1 < m; ++i) {
        if (trial[i] < obstacle - dip_slack) return false;
      }
      return true;
    };
    while (lo_j < hi_j) {
      const std::size_t mid = (lo_j + hi_j) / 2;
      if (admissible(mid)) {
        hi_j = mid;
      } else {
        lo_j = mid + 1;
      }
    }
    solve_continuation_region(g, gp, obstacle, lo_j, sol.values);
  }

  // Projected SOR sweeps; with a warm start these just certify the fixed
  // point, from a cold start they are the solver itself.
  const double h2 = g.h * g.h;
  std::size_t sweep = 0;
  double max_update = 0.0;
  for (;; ++sweep) {
    if (sweep >= cfg.max_iterations) {
      std::ostringstream os;
      os << "projected SOR did not reach tolerance " << cfg.tolerance << " in "
         << cfg.max_iterations << " sweeps (last max update " << max_update << ")";
      throw NoConvergence(os.str(), max_update, sweep);
    }
    max_update = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const double lam = g.diffusion[i] / h2;
      const double gs = (g.source[i] + lam * (sol.values[i - 1] + sol.values[i + 1])) /
                        (2.0 * lam + gp.r);
      double next = sol.values[i] + cfg.relaxation * (gs - sol.values[i]);
      next = std::max(next, obstacle);
      max_update = std::max(max_update, std::abs(next - sol.values[i]));
      sol.values[i] = next;
    }
    if (max_update <= cfg.tolerance) break;
  }
  sol.iterations = sweep + 1;
  sol.residual = max_update;
  sol.boundary_estimate = detect_boundary(sol, cfg.contact_tol);
  return sol;
}

GridSolution solve_employee_bvp(const GameParams& gp, double b, const GridConfig& cfg) {
  if (!(b > 0.0 && b < cfg.hi)) throw ConfigViolation("threshold b must lie in (0, hi)");
  if (cfg.points < 16) throw ConfigViolation("employee BVP grid needs at least 16 points");
  if (!(cfg.hi < 1.0)) throw ConfigViolation("grid must satisfy hi < 1");

  const DerivedQuantities d = derived_quantities(gp);
  const std::size_t m = cfg.points;
  const double h = (cfg.hi - b) / static_cast<double>(m - 1);
  const double h2 = h * h;
  const double omega2 = d.omega * d.omega;

  GridSolution sol;
  sol.obstacle = 0.0;
  sol.boundary_estimate = b;
  sol.pi_grid.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.pi_grid[i] = b + static_cast<double>(i) * h;
  sol.values.assign(m, 0.0);
  sol.values[m - 1] = gp.c1 / gp.r;  // near-1 value

  const std::size_t n = m - 2;
  std::vector<double> sub(n), diag(n), sup(n), rhs(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double pi = sol.pi_grid[t + 1];
    const double lam = 0.5 * omega2 * pi * pi * (1.0 - pi) * (1.0 - pi) / h2;
    const double drift = -omega2 * pi * pi * (1.0 - pi);  // negative: upwind backward
    sub[t] = lam - drift / h;
    diag[t] = -(2.0 * lam - drift / h + gp.r);
    sup[t] = lam;
    rhs[t] = -gp.c1;
  }
  rhs[0] -= sub[0] * 0.0;
  rhs[n - 1] -= sup[n - 1] * sol.values[m - 1];
  solve_tridiagonal(sub, diag, sup, rhs);
  for (std::size_t t = 0; t < n; ++t) sol.values[t + 1] = rhs[t];

  sol.iterations = 0;
  sol.residual = 0.0;
  return sol;
}

double max_complementarity_residual(const GridSolution& sol, const GameParams& gp) {
  const DerivedQuantities d = derived_quantities(gp);
  const std::size_t m = sol.pi_grid.size();
  const double h = sol.pi_grid[1] - sol.pi_grid[0];
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double pi = sol.pi_grid[i];
    const double diff = 0.5 * d.omega * d.omega * pi * pi * (1.0 - pi) * (1.0 - pi);
    const double pde = diff *
                           (sol.values[i + 1] - 2.0 * sol.values[i] + sol.values[i - 1]) /
                           (h * h) -
                       gp.r * sol.values[i] + gp.mu0 - gp.c1 + (gp.mu1 - gp.mu0) * pi;
    const double contact = sol.values[i] - sol.obstacle;
    worst = std::max(worst, std::min(std::abs(pde), std::abs(contact)));
  }
  return worst;
}

}  // namespace hirefire
