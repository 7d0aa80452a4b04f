#include "hirefire/sim.hpp"

#include <cmath>

namespace hirefire {

namespace {

constexpr std::size_t kMaxSteps = 100'000'000;

std::vector<double> time_grid(double dt, std::size_t n_steps) {
  std::vector<double> t(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw ConfigViolation("sim config: dt must be positive and finite");
  if (!(cfg.horizon >= cfg.dt) || !std::isfinite(cfg.horizon))
    throw ConfigViolation("sim config: horizon must be finite and >= dt");
  const double n = cfg.horizon / cfg.dt;
  if (!(n <= static_cast<double>(kMaxSteps)))
    throw ConfigViolation("sim config: horizon/dt exceeds the path length bound");
}

std::size_t step_count(const SimConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
}

PathSample simulate_filter_path(double pi0, const SimConfig& cfg, Measure measure,
                                const GameParams& gp, std::uint64_t path_index) {
  validate(cfg);
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw DomainViolation("pi0 must lie in [0,1]");
  const DerivedQuantities d = derived_quantities(gp);
  const std::size_t n = step_count(cfg);

  PathSample path;
  path.measure = measure;
  path.times = time_grid(cfg.dt, n);
  path.pi.reserve(n + 1);

  PathRng rng(cfg.seed, path_index, static_cast<std::uint64_t>(StreamTag::Main));
  if (cfg.scheme == Scheme::EulerOnPi) {
    path.clamp_events = walk_filter_euler(pi0, measure, d.omega, cfg.dt, n, rng,
                                          [&](std::size_t, double pi) {
                                            path.pi.push_back(pi);
                                            return true;
                                          });
  } else {
    double mu_true = 0.0;
    switch (measure) {
      case Measure::GivenWeak: mu_true = gp.mu0; break;
      case Measure::GivenStrong: mu_true = gp.mu1; break;
      case Measure::Employer:
        // Mixture: draw the type first, then filter the conditional path.
        mu_true = rng.uniform() < pi0 ? gp.mu1 : gp.mu0;
        break;
    }
    // Same draws in the same order as walk_filter_exact, with the driving
    // observation path recorded for the CSV dump.
    path.x.resize(n + 1);
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double sig2 = gp.sigma * gp.sigma;
    const double slope = (gp.mu1 - gp.mu0) / sig2;
    const double offset = (gp.mu1 * gp.mu1 - gp.mu0 * gp.mu0) / (2.0 * sig2);
    const bool degenerate = pi0 <= 0.0 || pi0 >= 1.0;
    const double logit0 = degenerate ? 0.0 : std::log(pi0 / (1.0 - pi0));
    double x = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      path.x[k] = x;
      if (degenerate) {
        path.pi.push_back(pi0);
      } else {
        const double log_odds = logit0 + slope * x - offset * path.times[k];
        path.pi.push_back(1.0 / (1.0 + std::exp(-log_odds)));
      }
      if (k < n) x += mu_true * cfg.dt + gp.sigma * sqrt_dt * rng.gauss();
    }
  }
  return path;
}

PathSample simulate_observation_path(double mu_true, const SimConfig& cfg,
                                     const GameParams& gp, std::uint64_t path_index) {
  validate(cfg);
  if (mu_true != gp.mu0 && mu_true != gp.mu1)
    throw ConfigViolation("mu_true must be one of the two drift hypotheses");
  const std::size_t n = step_count(cfg);

  PathSample path;
  path.measure = mu_true == gp.mu0 ? Measure::GivenWeak : Measure::GivenStrong;
  path.times = time_grid(cfg.dt, n);
  path.x.resize(n + 1);

  PathRng rng(cfg.seed, path_index, static_cast<std::uint64_t>(StreamTag::Main));
  const double sqrt_dt = std::sqrt(cfg.dt);
  double x = 0.0;
  path.x[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    x += mu_true * cfg.dt + gp.sigma * sqrt_dt * rng.gauss();
    path.x[k] = x;
  }
  return path;
}

PathSample filter_from_observations(const PathSample& path_x, double pi0,
                                    const GameParams& gp) {
  if (path_x.x.empty()) throw MissingObservations("path carries no observation values");
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw DomainViolation("pi0 must lie in (0,1)");

  PathSample path = path_x;
  const double sig2 = gp.sigma * gp.sigma;
  const double slope = (gp.mu1 - gp.mu0) / sig2;
  const double offset = (gp.mu1 * gp.mu1 - gp.mu0 * gp.mu0) / (2.0 * sig2);
  const double logit0 = std::log(pi0 / (1.0 - pi0));
  path.pi.resize(path.x.size());
  for (std::size_t k = 0; k < path.x.size(); ++k) {
    const double log_odds = logit0 + slope * path.x[k] - offset * path.times[k];
    path.pi[k] = 1.0 / (1.0 + std::exp(-log_odds));
  }
  return path;
}

std::optional<double> first_passage(PathSample& path, double threshold) {
  path.hit_time.reset();
  for (std::size_t k = 0; k < path.pi.size(); ++k) {
    if (path.pi[k] <= threshold) {
      path.hit_time = path.times[k];
      break;
    }
  }
  return path.hit_time;
}

std::optional<double> first_passage(PathSample& path, const StoppingRule& rule) {
  if (rule.is_never_stop()) {
    path.hit_time.reset();
    return path.hit_time;
  }
  if (rule.is_stop_immediately()) {
    path.hit_time = 0.0;
    return path.hit_time;
  }
  return first_passage(path, rule.threshold());
}

}  // namespace hirefire
