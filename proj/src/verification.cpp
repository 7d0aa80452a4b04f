#include "hirefire/verification.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "hirefire/errors.hpp"

namespace hirefire {

namespace {

std::size_t resolve_thread_count() {
  if (const char* env = std::getenv("HIREFIRE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return std::min<std::size_t>(v, 256);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Static contiguous shards; per-path streams make the work order
// irrelevant to the results.
template <class Body>
void parallel_for(std::size_t n, const Body& body) {
  const std::size_t n_threads = std::min(resolve_thread_count(), std::max<std::size_t>(n, 1));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t chunk = (n + n_threads - 1) / n_threads;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Fixed-shape pairwise reduction: the result depends only on the vector
// contents, not on how threads produced them.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sq_dev(const double* v, std::size_t n, double mean) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = v[i] - mean;
      s += d * d;
    }
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sq_dev(v, half, mean) + pairwise_sq_dev(v + half, n - half, mean);
}

MonteCarloEstimate make_estimate(const std::vector<double>& vals, double truncation_bound,
                                 std::uint64_t clamps) {
  if (vals.size() < 2) throw ConfigViolation("estimator needs at least 2 paths");
  MonteCarloEstimate est;
  est.n_paths = vals.size();
  est.truncation_bound = truncation_bound;
  est.clamp_events = clamps;
  const double n = static_cast<double>(vals.size());
  est.mean = pairwise_sum(vals.data(), vals.size()) / n;
  const double var = pairwise_sq_dev(vals.data(), vals.size(), est.mean) / (n - 1.0);
  est.std_error = std::sqrt(var / n);
  return est;
}

constexpr std::uint64_t tag(StreamTag t) { return static_cast<std::uint64_t>(t); }

struct DiscountedGrid {
  std::size_t n_steps;
  double horizon;     ///< n_steps * dt (grid truncation time)
  double step_decay;  ///< e^{-r dt}
  double step_weight; ///< (1 - e^{-r dt}) / r
  double tail_factor; ///< e^{-r horizon}
};

DiscountedGrid discounted_grid(const GameParams& gp, const SimConfig& sim) {
  DiscountedGrid g;
  g.n_steps = step_count(sim);
  g.horizon = static_cast<double>(g.n_steps) * sim.dt;
  g.step_decay = std::exp(-gp.r * sim.dt);
  g.step_weight = (1.0 - g.step_decay) / gp.r;
  g.tail_factor = std::exp(-gp.r * g.horizon);
  return g;
}

// Sum of discount weights accrued strictly before the stopping step,
// per-path core of every payoff estimator below. The visitor contract of
// the walk kernels feeds it belief values on the grid.
template <class Walk>
double discounted_occupation(const DiscountedGrid& g, double threshold, Walk&& walk) {
  double acc = 0.0;
  double disc = 1.0;
  walk([&](std::size_t k, double pi) {
    if (pi <= threshold) return false;
    if (k < g.n_steps) {
      acc += disc;
      disc *= g.step_decay;
    }
    return true;
  });
  return acc;
}

double type_conditional_drift_mu(const GameParams& gp, Measure measure) {
  return measure == Measure::GivenStrong ? gp.mu1 : gp.mu0;
}

}  // namespace

MonteCarloEstimate estimate_employee_payoff(const GameParams& gp, SalaryLevel salary,
                                            const StoppingRule& rule, double pi_start,
                                            Measure measure, const McConfig& cfg) {
  validate(cfg.sim);
  if (measure == Measure::Employer)
    throw ConfigViolation("employee payoff is estimated under a type-conditional measure");
  if (!(pi_start >= 0.0 && pi_start <= 1.0))
    throw DomainViolation("pi_start must lie in [0,1]");
  const double rate = salary == SalaryLevel::Low ? gp.c0 : gp.c1;
  const DiscountedGrid g = discounted_grid(gp, cfg.sim);
  const double trunc = g.tail_factor * rate / gp.r;
  std::vector<double> vals(cfg.n_paths, 0.0);

  if (rule.is_stop_immediately() || rule.triggers(pi_start)) {
    return make_estimate(vals, trunc, 0);  // tau = 0 exactly
  }
  if (rule.is_never_stop()) {
    std::fill(vals.begin(), vals.end(), rate * (1.0 - g.tail_factor) / gp.r);
    return make_estimate(vals, trunc, 0);
  }

  const double thr = rule.threshold();
  const DerivedQuantities d = derived_quantities(gp);
  std::atomic<std::uint64_t> clamps{0};
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    PathRng rng(cfg.sim.seed, i, tag(StreamTag::Main));
    double occupation = 0.0;
    if (cfg.sim.scheme == Scheme::EulerOnPi) {
      std::uint64_t path_clamps = 0;
      occupation = discounted_occupation(g, thr, [&](auto&& visit) {
        path_clamps = walk_filter_euler(pi_start, measure, d.omega, cfg.sim.dt, g.n_steps,
                                        rng, visit);
      });
      if (path_clamps) clamps.fetch_add(path_clamps, std::memory_order_relaxed);
    } else {
      occupation = discounted_occupation(g, thr, [&](auto&& visit) {
        walk_filter_exact(pi_start, type_conditional_drift_mu(gp, measure), gp, cfg.sim.dt,
                          g.n_steps, rng, visit);
      });
    }
    vals[i] = rate * g.step_weight * occupation;
  });
  return make_estimate(vals, trunc, clamps.load());
}

EmployerPayoffEstimates estimate_employer_payoff(const GameParams& gp, SalaryLevel salary,
                                                 const StoppingRule& rule, double pi_start,
                                                 const McConfig& cfg) {
  validate(cfg.sim);
  if (!(pi_start >= 0.0 && pi_start <= 1.0))
    throw DomainViolation("pi_start must lie in [0,1]");
  const double c = salary == SalaryLevel::Low ? gp.c0 : gp.c1;
  const DerivedQuantities d = derived_quantities(gp);
  const DiscountedGrid g = discounted_grid(gp, cfg.sim);
  const double max_rate = std::max(std::abs(gp.mu0 - c), std::abs(gp.mu1 - c));
  const double trunc = g.tail_factor * max_rate / gp.r;

  EmployerPayoffEstimates out;
  std::vector<double> vals(cfg.n_paths, 0.0);

  const bool stops_at_once = rule.is_stop_immediately() || rule.triggers(pi_start);

  // (a) type-draw estimator: mu is drawn per path, the running rate mu - c
  // is constant along the path.
  if (stops_at_once) {
    out.type_draw = make_estimate(vals, trunc, 0);
  } else {
    std::atomic<std::uint64_t> clamps{0};
    parallel_for(cfg.n_paths, [&](std::size_t i) {
      PathRng rng(cfg.sim.seed, i, tag(StreamTag::EmployerTypeDraw));
      const bool strong = rng.uniform() < pi_start;
      const double mu = strong ? gp.mu1 : gp.mu0;
      if (rule.is_never_stop()) {
        vals[i] = (mu - c) * (1.0 - g.tail_factor) / gp.r;
        return;
      }
      const Measure measure = strong ? Measure::GivenStrong : Measure::GivenWeak;
      double occupation = 0.0;
      if (cfg.sim.scheme == Scheme::EulerOnPi) {
        std::uint64_t path_clamps = 0;
        occupation = discounted_occupation(g, rule.threshold(), [&](auto&& visit) {
          path_clamps = walk_filter_euler(pi_start, measure, d.omega, cfg.sim.dt, g.n_steps,
                                          rng, visit);
        });
        if (path_clamps) clamps.fetch_add(path_clamps, std::memory_order_relaxed);
      } else {
        occupation = discounted_occupation(g, rule.threshold(), [&](auto&& visit) {
          walk_filter_exact(pi_start, mu, gp, cfg.sim.dt, g.n_steps, rng, visit);
        });
      }
      vals[i] = (mu - c) * g.step_weight * occupation;
    });
    out.type_draw = make_estimate(vals, trunc, clamps.load());
  }

  // (b) filter estimator: employer-measure paths, running rate
  // mu0 - c + (mu1 - mu0) Pi_t.
  std::fill(vals.begin(), vals.end(), 0.0);
  if (stops_at_once) {
    out.filter = make_estimate(vals, trunc, 0);
    return out;
  }
  const double thr = rule.is_never_stop() ? -1.0 : rule.threshold();
  const double base_rate = gp.mu0 - c;
  const double slope = gp.mu1 - gp.mu0;
  std::atomic<std::uint64_t> clamps{0};
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    PathRng rng(cfg.sim.seed, i, tag(StreamTag::EmployerFilter));
    double acc = 0.0;
    double disc = 1.0;
    auto visit = [&](std::size_t k, double pi) {
      if (pi <= thr) return false;
      if (k < g.n_steps) {
        acc += (base_rate + slope * pi) * disc;
        disc *= g.step_decay;
      }
      return true;
    };
    if (cfg.sim.scheme == Scheme::EulerOnPi) {
      const std::uint64_t path_clamps =
          walk_filter_euler(pi_start, Measure::Employer, d.omega, cfg.sim.dt, g.n_steps,
                            rng, visit);
      if (path_clamps) clamps.fetch_add(path_clamps, std::memory_order_relaxed);
    } else {
      const double mu = rng.uniform() < pi_start ? gp.mu1 : gp.mu0;
      walk_filter_exact(pi_start, mu, gp, cfg.sim.dt, g.n_steps, rng, visit);
    }
    vals[i] = g.step_weight * acc;
  });
  out.filter = make_estimate(vals, trunc, clamps.load());
  return out;
}

IndifferenceReport indifference_check(const GameParams& gp, const McConfig& cfg) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  if (!(gp.p < p_hat)) {
    std::ostringstream os;
    os << "indifference check requires the semi-separating regime (p < p_hat), got p = "
       << gp.p << ", p_hat = " << p_hat;
    throw RegimeMismatch(os.str());
  }
  IndifferenceReport report;
  report.p_hat = p_hat;
  report.b = b;
  report.target = gp.c0 / gp.r;
  report.estimate = estimate_employee_payoff(gp, SalaryLevel::High,
                                             StoppingRule::at_threshold(b), p_hat,
                                             Measure::GivenWeak, cfg);
  report.error = std::abs(report.estimate.mean - report.target);
  report.stat_budget = 3.0 * report.estimate.std_error;
  report.det_budget = report.estimate.truncation_bound + kDtBiasAllowance;
  report.pass = report.error <= report.stat_budget + report.det_budget;
  return report;
}

DeviationReport employer_deviation_sweep(const GameParams& gp, const McConfig& cfg,
                                         std::vector<double> thresholds, double pi_start) {
  validate(cfg.sim);
  if (thresholds.empty()) throw ConfigViolation("threshold grid must be nonempty");
  std::sort(thresholds.begin(), thresholds.end());
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  std::size_t eq_index = thresholds.size();
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - b) <= 1e-9) eq_index = i;
    if (!(thresholds[i] > 0.0 && thresholds[i] < 1.0))
      throw ConfigViolation("sweep thresholds must lie in (0,1)");
  }
  if (eq_index == thresholds.size())
    throw ConfigViolation("threshold grid must include the equilibrium threshold b");

  const DiscountedGrid g = discounted_grid(gp, cfg.sim);
  const double base_rate = gp.mu0 - gp.c1;
  const double slope = gp.mu1 - gp.mu0;
  const double max_rate = std::max(std::abs(gp.mu0 - gp.c1), std::abs(gp.mu1 - gp.c1));
  const std::size_t n_grid = thresholds.size();

  // One employer-measure walk per path serves every grid point: sorted
  // thresholds trigger outside-in as the belief falls.
  std::vector<std::vector<double>> payoff(n_grid, std::vector<double>(cfg.n_paths, 0.0));
  std::atomic<std::uint64_t> clamps{0};
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    PathRng rng(cfg.sim.seed, i, tag(StreamTag::EmployerFilter));
    double acc = 0.0;
    double disc = 1.0;
    std::ptrdiff_t active = static_cast<std::ptrdiff_t>(n_grid) - 1;
    const std::uint64_t path_clamps = walk_filter_euler(
        pi_start, Measure::Employer, d.omega, cfg.sim.dt, g.n_steps, rng,
        [&](std::size_t k, double pi) {
          while (active >= 0 && pi <= thresholds[static_cast<std::size_t>(active)]) {
            payoff[static_cast<std::size_t>(active)][i] = g.step_weight * acc;
            --active;
          }
          if (active < 0) return false;
          if (k < g.n_steps) {
            acc += (base_rate + slope * pi) * disc;
            disc *= g.step_decay;
          }
          return true;
        });
    for (std::ptrdiff_t t = 0; t <= active; ++t)
      payoff[static_cast<std::size_t>(t)][i] = g.step_weight * acc;
    if (path_clamps) clamps.fetch_add(path_clamps, std::memory_order_relaxed);
  });

  DeviationReport report;
  report.kind = "employer_threshold";
  report.grid = thresholds;
  report.equilibrium_index = eq_index;
  const double trunc = g.tail_factor * max_rate / gp.r;
  for (std::size_t gi = 0; gi < n_grid; ++gi)
    report.values.push_back(make_estimate(payoff[gi], trunc, gi == 0 ? clamps.load() : 0));

  // Path-by-path differences against the equilibrium point (CRN).
  std::vector<double> diff(cfg.n_paths);
  bool no_profitable_deviation = true;
  for (std::size_t gi = 0; gi < n_grid; ++gi) {
    for (std::size_t i = 0; i < cfg.n_paths; ++i)
      diff[i] = payoff[gi][i] - payoff[eq_index][i];
    const MonteCarloEstimate de = make_estimate(diff, 0.0, 0);
    report.diff_mean.push_back(de.mean);
    report.diff_std_error.push_back(de.std_error);
    if (de.mean > 3.0 * de.std_error) no_profitable_deviation = false;
  }
  std::size_t argmax = 0;
  for (std::size_t gi = 1; gi < n_grid; ++gi)
    if (report.values[gi].mean > report.values[argmax].mean) argmax = gi;
  const bool argmax_near_b =
      (argmax >= eq_index ? argmax - eq_index : eq_index - argmax) <= 1;
  report.pass = no_profitable_deviation && argmax_near_b;
  std::ostringstream note;
  note << "argmax at grid[" << argmax << "] = " << report.grid[argmax]
       << ", equilibrium at grid[" << eq_index << "]";
  report.note = note.str();
  return report;
}

namespace {

// Shared backbone of the two employee sweeps: the deviation value is affine
// in the mixing probability, (1-a) * low-salary value + a * high-salary MC
// value, with the employer response held at the equilibrium.
DeviationReport mixing_sweep(const GameParams& gp, const McConfig& cfg,
                             std::vector<double> a_grid, Measure measure,
                             double equilibrium_a, const char* kind) {
  if (a_grid.empty()) throw ConfigViolation("mixing grid must be nonempty");
  std::sort(a_grid.begin(), a_grid.end());
  for (const double a : a_grid)
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigViolation("mixing probabilities lie in [0,1]");

  const Equilibrium eq = assemble_pbe(gp);
  const double pi0 = eq.belief.second;
  const DiscountedGrid g = discounted_grid(gp, cfg.sim);
  const double low_leg = gp.c0 * (1.0 - g.tail_factor) / gp.r;

  const MonteCarloEstimate high = estimate_employee_payoff(
      gp, SalaryLevel::High, eq.threshold_high, pi0, measure, cfg);

  DeviationReport report;
  report.kind = kind;
  report.grid = a_grid;
  std::size_t eq_index = 0;
  for (std::size_t i = 1; i < a_grid.size(); ++i)
    if (std::abs(a_grid[i] - equilibrium_a) < std::abs(a_grid[eq_index] - equilibrium_a))
      eq_index = i;
  report.equilibrium_index = eq_index;
  for (const double a : a_grid) {
    MonteCarloEstimate point;
    point.mean = (1.0 - a) * low_leg + a * high.mean;
    point.std_error = a * high.std_error;
    point.n_paths = high.n_paths;
    point.truncation_bound =
        (1.0 - a) * g.tail_factor * gp.c0 / gp.r + a * high.truncation_bound;
    point.clamp_events = high.clamp_events;
    report.values.push_back(point);
    const double a_eq = a_grid[eq_index];
    report.diff_mean.push_back((a - a_eq) * (high.mean - low_leg));
    report.diff_std_error.push_back(std::abs(a - a_eq) * high.std_error);
  }
  return report;
}

}  // namespace

DeviationReport weak_mixing_sweep(const GameParams& gp, const McConfig& cfg,
                                  std::vector<double> a0_grid) {
  const Equilibrium eq = assemble_pbe(gp);
  DeviationReport report = mixing_sweep(gp, cfg, std::move(a0_grid), Measure::GivenWeak,
                                        eq.a_star.first, "weak_mixing");
  bool ok = true;
  std::ostringstream note;
  if (eq.regime == Regime::SemiSeparating) {
    // Indifference: all grid values statistically equal.
    for (std::size_t i = 0; i < report.grid.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < report.grid.size(); ++j) {
        const double gap = std::abs(report.values[i].mean - report.values[j].mean);
        const double comb = std::hypot(report.values[i].std_error,
                                       report.values[j].std_error);
        const double det = report.values[i].truncation_bound +
                           report.values[j].truncation_bound + kDtBiasAllowance;
        if (gap > 3.0 * comb + det) {
          ok = false;
          note << "flatness fails between a0 = " << report.grid[i] << " and "
               << report.grid[j] << " (gap " << gap << ")";
          break;
        }
      }
    }
    if (ok) note << "weak-type value flat across the grid";
  } else {
    // Pooling: value is nondecreasing in a0.
    for (std::size_t i = 0; i + 1 < report.grid.size(); ++i) {
      if (report.values[i + 1].mean <
          report.values[i].mean - 3.0 * report.values[i + 1].std_error) {
        ok = false;
      }
    }
    note << (ok ? "pooling regime: value nondecreasing in a0"
                : "pooling regime: monotonicity fails");
  }
  report.pass = ok;
  report.note = note.str();
  return report;
}

DeviationReport strong_mixing_sweep(const GameParams& gp, const McConfig& cfg,
                                    std::vector<double> a1_grid) {
  DeviationReport report = mixing_sweep(gp, cfg, std::move(a1_grid),
                                        Measure::GivenStrong, 1.0, "strong_mixing");
  // The largest grid point (a1 = 1 in the standard grid) must not be
  // dominated and must clear the all-c0 fallback.
  const std::size_t last = report.grid.size() - 1;
  bool ok = true;
  const MonteCarloEstimate& at_one = report.values[last];
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    const double comb = std::hypot(at_one.std_error, report.values[i].std_error);
    if (at_one.mean < report.values[i].mean - 3.0 * comb) ok = false;
  }
  if (at_one.mean < gp.c0 / gp.r - 3.0 * at_one.std_error - at_one.truncation_bound -
                        kDtBiasAllowance)
    ok = false;
  report.pass = ok;
  report.note = ok ? "a1 = 1 undominated and above c0/r"
                   : "a1 = 1 dominated or below c0/r";
  return report;
}

PoolingComparison pooling_comparison(const GameParams& gp, const McConfig& cfg) {
  const Equilibrium eq = assemble_pbe(gp);
  PoolingComparison cmp;
  cmp.regime = eq.regime;
  cmp.pooling_value = gp.c0 / gp.r;
  cmp.weak_value = eq.value_weak;

  // Strong type choosing c1 from the equilibrium posterior; no closed form.
  cmp.strong_mc = estimate_employee_payoff(gp, SalaryLevel::High, eq.threshold_high,
                                           eq.belief.second, Measure::GivenStrong, cfg);
  cmp.strong_dominates =
      cmp.strong_mc.mean - cmp.pooling_value > 3.0 * cmp.strong_mc.std_error;
  cmp.weak_dominates = cmp.weak_value >= cmp.pooling_value - 1e-9;
  cmp.pass = cmp.strong_dominates && cmp.weak_dominates;
  return cmp;
}

Lemma1Report lemma1_agreement(const GameParams& gp, const McConfig& cfg,
                              const std::vector<double>& pi_grid) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  Lemma1Report report;
  report.pass = true;
  for (const double pi0 : pi_grid) {
    Lemma1Point point;
    point.pi0 = pi0;
    point.est = estimate_employer_payoff(gp, SalaryLevel::High,
                                         StoppingRule::at_threshold(b), pi0, cfg);
    point.diff = point.est.type_draw.mean - point.est.filter.mean;
    point.combined_se =
        std::hypot(point.est.type_draw.std_error, point.est.filter.std_error);
    point.agree = std::abs(point.diff) <= 3.0 * point.combined_se;
    report.pass = report.pass && point.agree;
    report.points.push_back(point);
  }
  return report;
}

namespace {

std::string format_pi(double pi0) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", pi0);
  return buf;
}

}  // namespace

BatteryReport run_standard_battery(const GameParams& gp, const McConfig& cfg,
                                   std::size_t lemma1_paths) {
  validate(cfg.sim);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  BatteryReport report;

  // Employer-measure martingale E[Pi_t] = Pi_0 at t in {1, 5, 20}; one walk
  // per path records all three times.
  {
    const double pi0 = 0.5;
    SimConfig mart_sim = cfg.sim;
    mart_sim.horizon = 20.0;
    const std::size_t n = step_count(mart_sim);
    const std::array<double, 3> times = {1.0, 5.0, 20.0};
    std::array<std::size_t, 3> at;
    for (std::size_t j = 0; j < 3; ++j)
      at[j] = static_cast<std::size_t>(std::llround(times[j] / mart_sim.dt));
    std::array<std::vector<double>, 3> snap;
    for (auto& s : snap) s.assign(cfg.n_paths, pi0);
    parallel_for(cfg.n_paths, [&](std::size_t i) {
      PathRng rng(mart_sim.seed, i, tag(StreamTag::Main));
      walk_filter_euler(pi0, Measure::Employer, d.omega, mart_sim.dt, n, rng,
                        [&](std::size_t k, double pi) {
                          for (std::size_t j = 0; j < 3; ++j)
                            if (k == at[j]) snap[j][i] = pi;
                          return true;
                        });
    });
    for (std::size_t j = 0; j < 3; ++j) {
      const MonteCarloEstimate est = make_estimate(snap[j], 0.0, 0);
      CheckRow row;
      row.name = "martingale_T" + format_pi(times[j]);
      row.mean = est.mean;
      row.std_error = est.std_error;
      row.target = pi0;
      row.stat_budget = 3.0 * est.std_error;
      row.det_budget = 0.0;
      row.n_paths = est.n_paths;
      row.pass = std::abs(row.mean - row.target) <= row.stat_budget;
      report.rows.push_back(row);
    }
  }

  auto push_estimate_row = [&](const std::string& name, const MonteCarloEstimate& est,
                               double target, double extra_det) {
    CheckRow row;
    row.name = name;
    row.mean = est.mean;
    row.std_error = est.std_error;
    row.target = target;
    row.stat_budget = 3.0 * est.std_error;
    row.det_budget = est.truncation_bound + extra_det;
    row.n_paths = est.n_paths;
    row.pass = std::abs(row.mean - row.target) <= row.stat_budget + row.det_budget;
    report.rows.push_back(row);
  };

  // Closed-form anchors.
  push_estimate_row("weak_low_salary_never_fired",
                    estimate_employee_payoff(gp, SalaryLevel::Low,
                                             StoppingRule::never_stop(), gp.p,
                                             Measure::GivenWeak, cfg),
                    gp.c0 / gp.r, 0.0);
  if (gp.p < p_hat) {
    const IndifferenceReport ind = indifference_check(gp, cfg);
    CheckRow row;
    row.name = "weak_high_salary_indifference";
    row.mean = ind.estimate.mean;
    row.std_error = ind.estimate.std_error;
    row.target = ind.target;
    row.stat_budget = ind.stat_budget;
    row.det_budget = ind.det_budget;
    row.n_paths = ind.estimate.n_paths;
    row.pass = ind.pass;
    report.rows.push_back(row);
  }
  {
    const double posterior = std::max(p_hat, gp.p);
    const EmployerPayoffEstimates est = estimate_employer_payoff(
        gp, SalaryLevel::High, StoppingRule::at_threshold(b), posterior, cfg);
    const double target = employer_value(posterior, gp, d, b);
    push_estimate_row("employer_value_type_draw", est.type_draw, target, kDtBiasAllowance);
    push_estimate_row("employer_value_filter", est.filter, target, kDtBiasAllowance);
  }
  {
    const EmployerPayoffEstimates est = estimate_employer_payoff(
        gp, SalaryLevel::Low, StoppingRule::never_stop(), 0.0, cfg);
    push_estimate_row("employer_low_salary_weak_belief", est.type_draw,
                      (gp.mu0 - gp.c0) / gp.r, 0.0);
  }

  // Estimator agreement across a 5-point belief grid.
  {
    McConfig lemma_cfg = cfg;
    lemma_cfg.n_paths = lemma1_paths == 0 ? std::max<std::size_t>(cfg.n_paths / 10, 200)
                                          : lemma1_paths;
    const std::vector<double> grid = {0.2, 0.3, 0.5, p_hat, 0.9};
    const Lemma1Report lemma = lemma1_agreement(gp, lemma_cfg, grid);
    for (const Lemma1Point& point : lemma.points) {
      CheckRow row;
      row.name = "lemma1_agreement_pi_" + format_pi(point.pi0);
      row.mean = point.diff;
      row.std_error = point.combined_se;
      row.target = 0.0;
      row.stat_budget = 3.0 * point.combined_se;
      row.det_budget = 0.0;
      row.n_paths = lemma_cfg.n_paths;
      row.pass = point.agree;
      report.rows.push_back(row);
    }
  }

  // Remark-style dominance of the all-c0 pooling value.
  {
    const PoolingComparison cmp = pooling_comparison(gp, cfg);
    CheckRow row;
    row.name = "strong_dominates_pooling";
    row.mean = cmp.strong_mc.mean;
    row.std_error = cmp.strong_mc.std_error;
    row.target = cmp.pooling_value;
    row.stat_budget = 3.0 * cmp.strong_mc.std_error;
    row.det_budget = 0.0;
    row.n_paths = cmp.strong_mc.n_paths;
    row.pass = cmp.pass;
    report.rows.push_back(row);
  }

  report.all_pass = true;
  for (const CheckRow& row : report.rows) report.all_pass = report.all_pass && row.pass;
  return report;
}

}  // namespace hirefire
