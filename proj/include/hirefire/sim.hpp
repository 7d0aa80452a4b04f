#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hirefire/errors.hpp"
#include "hirefire/params.hpp"
#include "hirefire/rng.hpp"
#include "hirefire/stopping.hpp"

namespace hirefire {

/// Probability measure a belief path is simulated under: the employer's
/// (type integrated out; the belief is a martingale) or conditional on the
/// true type.
enum class Measure { Employer, GivenWeak, GivenStrong };

/// Path construction scheme: Euler-Maruyama directly on the belief SDE, or
/// simulate the observation process and apply the exact likelihood-ratio
/// filter at grid points.
enum class Scheme { EulerOnPi, ExactFilterFromX };

struct SimConfig {
  double dt = 1e-3;        ///< time step, > 0
  double horizon = 200.0;  ///< truncation time, >= dt
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::EulerOnPi;
};

/// Throws ConfigViolation unless dt > 0, horizon >= dt and the implied path
/// length is representable (at most 100 million steps).
void validate(const SimConfig& cfg);

/// Number of steps on the grid 0, dt, ..., n*dt with n*dt ~ horizon.
std::size_t step_count(const SimConfig& cfg);

/// One discretized trajectory on the grid t_k = k dt.
struct PathSample {
  std::vector<double> times;
  std::vector<double> pi;  ///< belief values, clamped to [0,1]
  std::vector<double> x;   ///< observation values; empty unless simulated/filled
  Measure measure = Measure::Employer;
  std::optional<double> hit_time;  ///< set by first_passage
  std::uint64_t clamp_events = 0;  ///< Euler steps that left [0,1] and were clamped
};

/// Euler-Maruyama path of the belief SDE started at pi0 under the chosen
/// measure (drift 0 / -omega^2 pi^2(1-pi) / +omega^2 pi(1-pi)^2, diffusion
/// omega pi(1-pi)), clamped to [0,1] after each step. With
/// Scheme::ExactFilterFromX the path is instead the exact filter applied to
/// a simulated observation path (under Measure::Employer the type is drawn
/// first with probability pi0).
PathSample simulate_filter_path(double pi0, const SimConfig& cfg, Measure measure,
                                const GameParams& params, std::uint64_t path_index = 0);

/// Observation path X_t = mu_true t + sigma W_t on the grid; mu_true must
/// be one of params.mu0 / params.mu1.
PathSample simulate_observation_path(double mu_true, const SimConfig& cfg,
                                     const GameParams& params, std::uint64_t path_index = 0);

/// Exact posterior of the strong type given the observations in path_x,
/// computed through the likelihood ratio
///   Lambda_t = exp((mu1-mu0)/sigma^2 X_t - (mu1^2-mu0^2)/(2 sigma^2) t),
///   Pi_t = pi0 Lambda_t / (pi0 Lambda_t + 1 - pi0).
/// Requires pi0 in (0,1) and a nonempty x (MissingObservations otherwise).
PathSample filter_from_observations(const PathSample& path_x, double pi0,
                                    const GameParams& params);

/// First grid time with pi <= threshold; records it in path.hit_time.
std::optional<double> first_passage(PathSample& path, double threshold);

/// Marker-aware overload: never-stop yields nullopt, stop-immediately 0.
std::optional<double> first_passage(PathSample& path, const StoppingRule& rule);

// --- inline stepping kernels -------------------------------------------------
//
// The Monte Carlo estimators walk millions of paths without materializing
// PathSample objects; they share these kernels with the PathSample
// producers above so that a given (seed, tag, index) always yields the same
// trajectory. The visitor is called with (k, pi_k) for k = 0..n_steps and
// may return false to stop the walk early.

inline double filter_drift(Measure measure, double omega2, double pi) {
  switch (measure) {
    case Measure::Employer: return 0.0;
    case Measure::GivenWeak: return -omega2 * pi * pi * (1.0 - pi);
    case Measure::GivenStrong: return omega2 * pi * (1.0 - pi) * (1.0 - pi);
  }
  return 0.0;
}

template <class Visit>
std::uint64_t walk_filter_euler(double pi0, Measure measure, double omega, double dt,
                                std::size_t n_steps, PathRng& rng, Visit&& visit) {
  const double sqrt_dt = std::sqrt(dt);
  const double omega2 = omega * omega;
  std::uint64_t clamps = 0;
  double pi = pi0;
  for (std::size_t k = 0;; ++k) {
    if (!visit(k, pi)) break;
    if (k == n_steps) break;
    const double drift = filter_drift(measure, omega2, pi);
    pi += drift * dt + omega * pi * (1.0 - pi) * sqrt_dt * rng.gauss();
    if (pi < 0.0) {
      pi = 0.0;
      ++clamps;
    } else if (pi > 1.0) {
      pi = 1.0;
      ++clamps;
    }
  }
  return clamps;
}

/// Walks the exact filter driven by an observation path with drift mu_true.
/// Consumes one normal draw per step, in the same order as the Euler kernel,
/// so both representations can be driven by one Brownian path.
template <class Visit>
void walk_filter_exact(double pi0, double mu_true, const GameParams& gp, double dt,
                       std::size_t n_steps, PathRng& rng, Visit&& visit) {
  if (pi0 <= 0.0 || pi0 >= 1.0) {  // degenerate prior: filter is constant
    for (std::size_t k = 0; k <= n_steps; ++k) {
      if (!visit(k, pi0)) return;
      if (k < n_steps) rng.gauss();  // keep stream consumption aligned
    }
    return;
  }
  const double sqrt_dt = std::sqrt(dt);
  const double sig2 = gp.sigma * gp.sigma;
  const double slope = (gp.mu1 - gp.mu0) / sig2;
  const double offset = (gp.mu1 * gp.mu1 - gp.mu0 * gp.mu0) / (2.0 * sig2);
  const double logit0 = std::log(pi0 / (1.0 - pi0));
  double x = 0.0;
  for (std::size_t k = 0;; ++k) {
    const double log_odds = logit0 + slope * x - offset * (static_cast<double>(k) * dt);
    const double pi = 1.0 / (1.0 + std::exp(-log_odds));
    if (!visit(k, pi)) break;
    if (k == n_steps) break;
    x += mu_true * dt + gp.sigma * sqrt_dt * rng.gauss();
  }
}

}  // namespace hirefire
