#include <doctest.h>

#include <cmath>
#include <vector>

#include "hirefire/errors.hpp"
#include "hirefire/params.hpp"
#include "hirefire/sim.hpp"

using namespace hirefire;

namespace {

GameParams figure_params(double p = 0.5) {
  return validate_params(1.4, 1.7, 1.0, p, 0.05, 1.2, 1.5);
}

SimConfig cfg_of(double dt, double horizon, std::uint64_t seed,
                 Scheme scheme = Scheme::EulerOnPi) {
  SimConfig cfg;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.seed = seed;
  cfg.scheme = scheme;
  return cfg;
}

}  // namespace

TEST_CASE("sim config validation") {
  CHECK_THROWS_AS(validate(cfg_of(0.0, 1.0, 0)), ConfigViolation);
  CHECK_THROWS_AS(validate(cfg_of(-0.1, 1.0, 0)), ConfigViolation);
  CHECK_THROWS_AS(validate(cfg_of(1.0, 0.5, 0)), ConfigViolation);
  CHECK_THROWS_AS(validate(cfg_of(1e-9, 1e3, 0)), ConfigViolation);  // path length bound
  CHECK_NOTHROW(validate(cfg_of(1e-3, 200.0, 0)));
  CHECK(step_count(cfg_of(1e-3, 200.0, 0)) == 200000);
}

TEST_CASE("degenerate priors are absorbing") {
  const GameParams gp = figure_params();
  for (Measure m : {Measure::Employer, Measure::GivenWeak, Measure::GivenStrong}) {
    for (double pi0 : {0.0, 1.0}) {
      const PathSample path = simulate_filter_path(pi0, cfg_of(0.01, 1.0, 5), m, gp);
      for (double pi : path.pi) CHECK(pi == pi0);
      CHECK(path.clamp_events == 0);
    }
  }
}

TEST_CASE("paths are deterministic in (seed, index) and differ across indices") {
  const GameParams gp = figure_params();
  for (Scheme scheme : {Scheme::EulerOnPi, Scheme::ExactFilterFromX}) {
    const SimConfig cfg = cfg_of(0.01, 2.0, 99, scheme);
    const PathSample a = simulate_filter_path(0.4, cfg, Measure::GivenWeak, gp, 3);
    const PathSample b = simulate_filter_path(0.4, cfg, Measure::GivenWeak, gp, 3);
    const PathSample c = simulate_filter_path(0.4, cfg, Measure::GivenWeak, gp, 4);
    CHECK(a.pi == b.pi);
    CHECK(a.pi != c.pi);
  }
}

TEST_CASE("single seeded observation step matches the scheme definition") {
  const GameParams gp = figure_params();
  const SimConfig cfg = cfg_of(1.0, 1.0, 7);
  const PathSample path = simulate_observation_path(gp.mu0, cfg, gp, 0);
  PathRng rng(7, 0, static_cast<std::uint64_t>(StreamTag::Main));
  const double g = rng.gauss();
  CHECK(path.x.size() == 2);
  CHECK(path.x[0] == 0.0);
  CHECK(path.x[1] == gp.mu0 * cfg.dt + gp.sigma * std::sqrt(cfg.dt) * g);
  CHECK_THROWS_AS(simulate_observation_path(1.55, cfg, gp), ConfigViolation);
}

TEST_CASE("observation increments have the right moments") {
  const GameParams gp = figure_params();
  const SimConfig cfg = cfg_of(1e-3, 1000.0, 2024);  // 1e6 increments
  const PathSample path = simulate_observation_path(gp.mu1, cfg, gp, 0);
  const std::size_t n = path.x.size() - 1;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double inc = path.x[k + 1] - path.x[k];
    sum += inc;
    sumsq += inc * inc;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = (sumsq - sum * mean) / static_cast<double>(n - 1);
  const double target_mean = gp.mu1 * cfg.dt;
  const double target_var = gp.sigma * gp.sigma * cfg.dt;
  const double se_mean = gp.sigma * std::sqrt(cfg.dt) / std::sqrt(static_cast<double>(n));
  const double se_var = target_var * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(std::abs(mean - target_mean) <= 4.0 * se_mean);
  CHECK(std::abs(var - target_var) <= 4.0 * se_var);
}

TEST_CASE("exact filter from observations") {
  const GameParams gp = figure_params();

  SUBCASE("symmetric evidence keeps the posterior at 1/2") {
    PathSample path;
    path.times = {0.0, 0.5, 1.0, 2.0, 5.0};
    path.x.resize(path.times.size());
    const double mid = 0.5 * (gp.mu0 + gp.mu1);
    for (std::size_t k = 0; k < path.times.size(); ++k) path.x[k] = mid * path.times[k];
    const PathSample filtered = filter_from_observations(path, 0.5, gp);
    for (double pi : filtered.pi) CHECK(pi == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("time zero recovers the prior") {
    PathSample path;
    path.times = {0.0};
    path.x = {0.0};
    const PathSample filtered = filter_from_observations(path, 0.37, gp);
    CHECK(filtered.pi[0] == doctest::Approx(0.37).epsilon(1e-14));
  }

  SUBCASE("errors") {
    PathSample no_obs;
    no_obs.times = {0.0, 1.0};
    CHECK_THROWS_AS(filter_from_observations(no_obs, 0.5, gp), MissingObservations);
    PathSample path;
    path.times = {0.0};
    path.x = {0.0};
    CHECK_THROWS_AS(filter_from_observations(path, 0.0, gp), DomainViolation);
  }

  SUBCASE("agrees with the exact-scheme path sample") {
    const SimConfig cfg = cfg_of(0.01, 2.0, 31, Scheme::ExactFilterFromX);
    const PathSample sample = simulate_filter_path(0.4, cfg, Measure::GivenWeak, gp, 11);
    const PathSample refiltered = filter_from_observations(sample, 0.4, gp);
    for (std::size_t k = 0; k < sample.pi.size(); ++k)
      CHECK(sample.pi[k] == doctest::Approx(refiltered.pi[k]).epsilon(1e-13));
  }
}

TEST_CASE("employer-measure belief is a martingale") {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double dt = 1e-3, T = 5.0, pi0 = 0.5;
  const std::size_t n_steps = 5000, n_paths = 20000;
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t clamps = 0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    PathRng rng(2718, i, static_cast<std::uint64_t>(StreamTag::Main));
    double last = pi0;
    clamps += walk_filter_euler(pi0, Measure::Employer, d.omega, dt, n_steps, rng,
                                [&](std::size_t, double pi) {
                                  last = pi;
                                  return true;
                                });
    sum += last;
    sumsq += last * last;
  }
  const double mean = sum / n_paths;
  const double var = (sumsq - sum * mean) / (n_paths - 1.0);
  const double se = std::sqrt(var / n_paths);
  CHECK(std::abs(mean - pi0) <= 3.0 * se);
  CHECK(clamps == 0);
  (void)T;
}

TEST_CASE("filter concentrates at 0 under the weak type") {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double dt = 0.01;
  const std::size_t n_steps = 20000;  // T = 200
  const std::size_t n_paths = 2000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    PathRng rng(5150, i, static_cast<std::uint64_t>(StreamTag::Main));
    double last = 0.5;
    walk_filter_euler(0.5, Measure::GivenWeak, d.omega, dt, n_steps, rng,
                      [&](std::size_t, double pi) {
                        last = pi;
                        return true;
                      });
    sum += last;
  }
  CHECK(sum / n_paths < 0.05);
}

TEST_CASE("first passage") {
  const GameParams gp = figure_params();

  SUBCASE("starting at or below the threshold hits at time zero") {
    PathSample path = simulate_filter_path(0.1, cfg_of(0.01, 1.0, 1), Measure::Employer, gp);
    CHECK(first_passage(path, 0.1).value() == 0.0);
    CHECK(path.hit_time.value() == 0.0);
  }

  SUBCASE("threshold zero is unreached from the interior") {
    PathSample path =
        simulate_filter_path(0.5, cfg_of(0.01, 50.0, 2), Measure::GivenWeak, gp);
    CHECK(!first_passage(path, 0.0).has_value());
    CHECK(path.clamp_events == 0);
  }

  SUBCASE("marker rules") {
    PathSample path = simulate_filter_path(0.5, cfg_of(0.01, 1.0, 3), Measure::Employer, gp);
    CHECK(!first_passage(path, StoppingRule::never_stop()).has_value());
    CHECK(first_passage(path, StoppingRule::stop_immediately()).value() == 0.0);
    CHECK(first_passage(path, StoppingRule::at_threshold(0.4)) ==
          first_passage(path, 0.4));
  }

  SUBCASE("weak type almost surely passes the firing threshold") {
    const DerivedQuantities d = derived_quantities(gp);
    const double dt = 5e-3, thr = 1.0 / 6.0;
    const std::size_t n_steps = 40000;  // T = 200
    const std::size_t n_paths = 5000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
      PathRng rng(1234, i, static_cast<std::uint64_t>(StreamTag::Main));
      bool hit = false;
      walk_filter_euler(0.69, Measure::GivenWeak, d.omega, dt, n_steps, rng,
                        [&](std::size_t, double pi) {
                          if (pi <= thr) {
                            hit = true;
                            return false;
                          }
                          return true;
                        });
      hits += hit ? 1 : 0;
    }
    CHECK(static_cast<double>(hits) / n_paths > 0.99);
  }
}

TEST_CASE("coupled Euler-vs-exact filter converges strongly as dt halves") {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double T = 5.0, pi0 = 0.5;
  const std::size_t n_paths = 400;
  std::vector<double> dts = {8e-3, 4e-3, 2e-3, 1e-3};
  std::vector<double> mean_gap;
  for (double dt : dts) {
    const std::size_t n_steps = static_cast<std::size_t>(std::llround(T / dt));
    double total = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
      // Same stream drives both representations: one normal per step each.
      std::vector<double> exact(n_steps + 1);
      PathRng rng_exact(777, i, static_cast<std::uint64_t>(StreamTag::Main));
      walk_filter_exact(pi0, gp.mu0, gp, dt, n_steps, rng_exact,
                        [&](std::size_t k, double pi) {
                          exact[k] = pi;
                          return true;
                        });
      PathRng rng_euler(777, i, static_cast<std::uint64_t>(StreamTag::Main));
      double sup = 0.0;
      walk_filter_euler(pi0, Measure::GivenWeak, d.omega, dt, n_steps, rng_euler,
                        [&](std::size_t k, double pi) {
                          sup = std::max(sup, std::abs(pi - exact[k]));
                          return true;
                        });
      total += sup;
    }
    mean_gap.push_back(total / n_paths);
  }
  // gaps shrink; least-squares slope of log(gap) vs log(dt) in the
  // strong-order band
  for (std::size_t level = 1; level < dts.size(); ++level)
    CHECK(mean_gap[level] < mean_gap[level - 1]);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t level = 0; level < dts.size(); ++level) {
    const double x = std::log(dts[level]);
    const double y = std::log(mean_gap[level]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(dts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 0.5);
  CHECK(slope <= 1.5);
}

TEST_CASE("mixture identity: employer measure vs type draw") {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double dt = 1e-3, pi0 = 0.6;
  const std::size_t n_steps = 5000;  // T = 5
  const std::size_t n_paths = 4000;

  auto summarize = [](const std::vector<double>& v, double& mean, double& se,
                      double& mean2, double& se2) {
    double s = 0, sq = 0, s2 = 0, sq2 = 0;
    for (double x : v) {
      s += x;
      sq += x * x;
      s2 += x * x;
      sq2 += x * x * x * x;
    }
    const double n = static_cast<double>(v.size());
    mean = s / n;
    se = std::sqrt((sq - s * mean) / (n - 1.0) / n);
    mean2 = s2 / n;
    se2 = std::sqrt((sq2 - s2 * mean2) / (n - 1.0) / n);
  };

  std::vector<double> direct(n_paths), mixture(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    PathRng rng(31337, i, static_cast<std::uint64_t>(StreamTag::Main));
    double last = pi0;
    walk_filter_euler(pi0, Measure::Employer, d.omega, dt, n_steps, rng,
                      [&](std::size_t, double pi) {
                        last = pi;
                        return true;
                      });
    direct[i] = last;

    PathRng rng2(31337, i, static_cast<std::uint64_t>(StreamTag::StrongType));
    const Measure m = rng2.uniform() < pi0 ? Measure::GivenStrong : Measure::GivenWeak;
    walk_filter_euler(pi0, m, d.omega, dt, n_steps, rng2, [&](std::size_t, double pi) {
      last = pi;
      return true;
    });
    mixture[i] = last;
  }
  double m1, se1, m1b, se1b, m2, se2, m2b, se2b;
  summarize(direct, m1, se1, m1b, se1b);
  summarize(mixture, m2, se2, m2b, se2b);
  CHECK(std::abs(m1 - m2) <= 4.0 * std::hypot(se1, se2));
  CHECK(std::abs(m1b - m2b) <= 4.0 * std::hypot(se1b, se2b));
}
