// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Monte Carlo criteria run at their stated sample sizes, so the
// full suite takes several minutes on one core.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hirefire/equilibrium.hpp"
#include "hirefire/fbp_oracle.hpp"
#include "hirefire/params.hpp"
#include "hirefire/sim.hpp"
#include "hirefire/verification.hpp"

using namespace hirefire;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

GameParams figure_params(double p = 0.5) {
  return validate_params(1.4, 1.7, 1.0, p, 0.05, 1.2, 1.5);
}

McConfig standard_cfg(std::uint64_t seed, std::size_t paths) {
  McConfig cfg;
  cfg.sim.dt = 1e-3;
  cfg.sim.horizon = 200.0;
  cfg.sim.seed = seed;
  cfg.n_paths = paths;
  return cfg;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// --- criteria ---------------------------------------------------------------

Outcome criterion_threshold() {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const bool closed_ok = std::abs(b - 1.0 / 6.0) <= 1e-12;

  const auto t0 = std::chrono::steady_clock::now();
  GridConfig gc;  // 4000 points
  const GridSolution sol = solve_employer_vi(gp, 0.0, gc);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double oracle_err = std::abs(sol.boundary_estimate - 1.0 / 6.0);

  return {closed_ok && oracle_err <= 5e-3 && secs < 10.0,
          "b=" + g9(b) + " |b-1/6|=" + g9(std::abs(b - 1.0 / 6.0)) +
              ", oracle boundary=" + g9(sol.boundary_estimate) + " (err " +
              g9(oracle_err) + "), solve " + g9(secs) + " s"};
}

Outcome criterion_asymptotes() {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double v1 = employer_value(1.0, gp, d, b);
  const double v1m = employer_value(1.0 - 1e-12, gp, d, b);
  const double u1 = employee_value_weak(1.0, gp, d, b);
  const double u1m = employee_value_weak(1.0 - 1e-12, gp, d, b);
  const bool ok = std::abs(v1 - 4.0) <= 1e-6 && std::abs(v1m - 4.0) <= 1e-6 &&
                  std::abs(u1 - 30.0) <= 1e-6 && std::abs(u1m - 30.0) <= 1e-6;
  return {ok, "V(1-)=" + g9(v1m) + ", U(1-)=" + g9(u1m)};
}

Outcome criterion_oracle_agreement() {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  GridConfig gc;
  std::ostringstream detail;
  bool ok = true;

  auto sup_gap = [&](const GridSolution& sol, auto&& closed, double lo) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.pi_grid.size(); ++i) {
      const double pi = sol.pi_grid[i];
      if (pi < lo || pi > 0.99) continue;
      worst = std::max(worst, std::abs(sol.values[i] - closed(pi)));
    }
    return worst;
  };

  {
    const GridSolution sol = solve_employer_vi(gp, 0.0, gc);
    const double gap =
        sup_gap(sol, [&](double pi) { return employer_value(pi, gp, d, b); }, b + 0.01);
    ok = ok && gap <= 1e-3;
    detail << "V gap " << g9(gap);
  }
  for (double eps : {0.5, 1.0}) {
    const FiringCostParams fc = validate_firing_cost(gp, eps);
    const double beps = firing_cost_threshold(gp, d, fc);
    const GridSolution sol = solve_employer_vi(gp, -eps, gc);
    const double gap = sup_gap(
        sol, [&](double pi) { return employer_value_firing(pi, gp, d, fc); },
        beps + 0.01);
    ok = ok && gap <= 1e-3;
    detail << ", V^" << g9(eps) << " gap " << g9(gap);
  }
  {
    GridConfig uc;
    uc.points = 16000;  // the upwind first-derivative term converges O(h)
    const GridSolution sol = solve_employee_bvp(gp, b, uc);
    const double gap = sup_gap(
        sol, [&](double pi) { return employee_value_weak(pi, gp, d, b); }, b + 0.01);
    ok = ok && gap <= 1e-3;
    detail << ", U gap " << g9(gap);
  }
  {
    std::vector<std::size_t> resolutions = {1000, 2000, 4000};
    std::vector<double> errs;
    for (std::size_t points : resolutions) {
      GridConfig rc;
      rc.points = points;
      errs.push_back(
          std::abs(solve_employer_vi(gp, 0.0, rc).boundary_estimate - 1.0 / 6.0));
    }
    bool halves = true;
    for (std::size_t i = 1; i < errs.size(); ++i)
      halves = halves && errs[i] <= 0.5 * errs[i - 1];
    const double order = std::log(errs.front() / errs.back()) / std::log(4.0);
    ok = ok && order >= 1.0 && halves;
    detail << ", refinement order " << g9(order);
  }
  return {ok, detail.str()};
}

Outcome criterion_indifference() {
  const IndifferenceReport rep =
      indifference_check(figure_params(0.5), standard_cfg(kSeed, 100000));
  const double budget = rep.stat_budget + 2e-3;
  const bool ok = rep.error <= budget;
  return {ok, "mean=" + g9(rep.estimate.mean) + ", |err|=" + g9(rep.error) +
                  " vs 3*se+2e-3=" + g9(budget) + " (n=100000, dt=1e-3, T=200)"};
}

Outcome criterion_deviation_sweeps() {
  const GameParams gp = figure_params(0.5);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  const McConfig cfg = standard_cfg(kSeed, 100000);
  std::ostringstream detail;

  const DeviationReport employer =
      employer_deviation_sweep(gp, cfg, {0.05, 0.10, b, 0.25, 0.35}, p_hat);
  detail << "employer: " << employer.note;

  const Equilibrium eq = assemble_pbe(gp);
  const DeviationReport weak =
      weak_mixing_sweep(gp, cfg, {0.0, 0.25, eq.a_star.first, 0.75, 1.0});
  detail << "; weak: " << (weak.pass ? "flat" : weak.note);

  const DeviationReport strong = strong_mixing_sweep(gp, cfg, {0.0, 0.5, 1.0});
  detail << "; strong: " << (strong.pass ? "a1=1 undominated" : strong.note);

  return {employer.pass && weak.pass && strong.pass, detail.str()};
}

Outcome criterion_estimator_agreement() {
  const GameParams gp = figure_params(0.5);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  const Lemma1Report rep =
      lemma1_agreement(gp, standard_cfg(kSeed, 10000), {0.3, 0.5, p_hat, 0.9});
  std::ostringstream detail;
  for (const Lemma1Point& pt : rep.points) {
    detail << "pi0=" << g9(pt.pi0) << ": |diff|=" << g9(std::abs(pt.diff))
           << " vs 3*se=" << g9(3.0 * pt.combined_se) << "; ";
  }
  return {rep.pass, detail.str()};
}

Outcome criterion_reductions() {
  const GameParams gp = figure_params(0.5);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  bool ok = true;
  std::ostringstream detail;

  const Equilibrium bench = assemble_pbe(gp);
  const FiringCostResult fc = firing_cost_pbe(gp, validate_firing_cost(gp, 1e-9));
  const double fc_gap = std::max(
      {std::abs(fc.eq.a_star.first - bench.a_star.first),
       std::abs(fc.eq.a_star.second - bench.a_star.second),
       std::abs(fc.eq.belief.first - bench.belief.first),
       std::abs(fc.eq.belief.second - bench.belief.second),
       std::abs(fc.eq.threshold_high.threshold() - bench.threshold_high.threshold()),
       std::abs(fc.eq.value_weak - bench.value_weak)});
  ok = ok && fc_gap <= 1e-6 && fc.eq.regime == bench.regime &&
       fc.eq.threshold_low == bench.threshold_low;
  detail << "firing-cost eps=1e-9 max field gap " << g9(fc_gap);

  const Equilibrium tu = type_uncertainty_pbe(gp, validate_type_uncertainty(0.5, 1.0));
  const bool tu_exact = tu.a_star == bench.a_star && tu.belief == bench.belief &&
                        tu.threshold_low == bench.threshold_low &&
                        tu.threshold_high == bench.threshold_high &&
                        tu.regime == bench.regime && tu.value_weak == bench.value_weak;
  ok = ok && tu_exact;
  detail << "; type-uncertainty q=1 " << (tu_exact ? "exact" : "MISMATCH");

  const InterviewParams iv = validate_interview(gp, 1.0 - 1e-12);
  const double p_gap = std::abs(interview_indifference(gp, d, b, iv) - p_hat);
  ok = ok && p_gap <= 1e-9;
  detail << "; interview q->1 gap " << g9(p_gap);
  return {ok, detail.str()};
}

Outcome criterion_extension_values() {
  const GameParams gp = figure_params(0.5);
  const DerivedQuantities d = derived_quantities(gp);
  bool ok = true;
  std::ostringstream detail;

  const double beps =
      firing_cost_threshold(gp, d, validate_firing_cost(gp, 1.0));
  ok = ok && std::abs(beps - 2.0 / 27.0) <= 1e-9;
  detail << "b^1=" << g9(beps);

  GridConfig gc;
  const GridSolution sol = solve_employer_vi(gp, -1.0, gc);
  const double oracle_err = std::abs(sol.boundary_estimate - beps);
  ok = ok && oracle_err <= 5e-3;
  detail << " (oracle err " << g9(oracle_err) << ")";

  const double b = stopping_threshold(gp, d);
  const InterviewParams iv = validate_interview(gp, 0.9);
  const double p_hat_i = interview_indifference(gp, d, b, iv);
  ok = ok && std::abs(p_hat_i - 0.84375) <= 1e-9;
  detail << "; interview P_hat=" << g9(p_hat_i);

  const InterviewEquilibrium eq = interview_pbe(gp, iv);
  const double posterior =
      gp.p / (gp.p + (1.0 - gp.p) * eq.a_star.first * iv.q);
  const double bayes_gap = std::abs(posterior - eq.belief[3]);
  ok = ok && eq.a_star.first < 1.0 && bayes_gap <= 1e-10;
  detail << ", Bayes gap " << g9(bayes_gap);
  return {ok, detail.str()};
}

Outcome criterion_filter_sanity() {
  const GameParams gp = figure_params();
  const DerivedQuantities d = derived_quantities(gp);
  bool ok = true;
  std::ostringstream detail;

  // martingale at t in {1, 5, 20}
  {
    const double dt = 1e-3, pi0 = 0.5;
    const std::size_t n_steps = 20000, n_paths = 100000;
    const std::size_t at1 = 1000, at5 = 5000;
    std::vector<double> s1, s5, s20;
    s1.reserve(n_paths);
    s5.reserve(n_paths);
    s20.reserve(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
      PathRng rng(kSeed, i, static_cast<std::uint64_t>(StreamTag::Main));
      double v1 = pi0, v5 = pi0, v20 = pi0;
      walk_filter_euler(pi0, Measure::Employer, d.omega, dt, n_steps, rng,
                        [&](std::size_t k, double pi) {
                          if (k == at1) v1 = pi;
                          if (k == at5) v5 = pi;
                          if (k == n_steps) v20 = pi;
                          return true;
                        });
      s1.push_back(v1);
      s5.push_back(v5);
      s20.push_back(v20);
    }
    auto check_mart = [&](const std::vector<double>& v, const char* label) {
      double sum = 0, sumsq = 0;
      for (double x : v) {
        sum += x;
        sumsq += x * x;
      }
      const double n = static_cast<double>(v.size());
      const double mean = sum / n;
      const double se = std::sqrt((sumsq - sum * mean) / (n - 1.0) / n);
      const bool pass = std::abs(mean - pi0) <= 3.0 * se;
      ok = ok && pass;
      detail << label << " mean=" << g9(mean) << " (3se=" << g9(3.0 * se) << "); ";
    };
    check_mart(s1, "T1");
    check_mart(s5, "T5");
    check_mart(s20, "T20");
  }

  // coupled Euler-vs-exact gap order under dt halving
  {
    const double T = 5.0, pi0 = 0.5;
    const std::size_t n_paths = 400;
    const std::vector<double> dts = {8e-3, 4e-3, 2e-3, 1e-3};
    std::vector<double> gaps;
    for (double dt : dts) {
      const std::size_t n_steps = static_cast<std::size_t>(std::llround(T / dt));
      double total = 0.0;
      std::vector<double> exact(n_steps + 1);
      for (std::size_t i = 0; i < n_paths; ++i) {
        PathRng ra(kSeed, i, static_cast<std::uint64_t>(StreamTag::Main));
        walk_filter_exact(pi0, gp.mu0, gp, dt, n_steps, ra,
                          [&](std::size_t k, double pi) {
                            exact[k] = pi;
                            return true;
                          });
        PathRng rb(kSeed, i, static_cast<std::uint64_t>(StreamTag::Main));
        double sup = 0.0;
        walk_filter_euler(pi0, Measure::GivenWeak, d.omega, dt, n_steps, rb,
                          [&](std::size_t k, double pi) {
                            sup = std::max(sup, std::abs(pi - exact[k]));
                            return true;
                          });
        total += sup;
      }
      gaps.push_back(total / n_paths);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
      const double x = std::log(dts[i]);
      const double y = std::log(gaps[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(dts.size());
    const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    ok = ok && order >= 0.5;
    detail << "coupled-gap order " << g9(order);
  }
  return {ok, detail.str()};
}

// criterion 10: byte-identical CLI output across reruns and shard counts
std::string run_capture(const std::string& env, const std::string& args,
                        const fs::path& out, int& exit_code) {
  const std::string cmd = env + std::string(HIREFIRE_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "hirefire_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> commands = {
      "equilibrium --p 0.5",
      "value-grid --points 101",
      "simulate --measure given_weak --pi0 0.69 --paths 2 --seed 9 --dt 0.01 "
      "--horizon 1 --out " + (dir / "paths").string(),
      "verify --battery quick --seed 9 --paths 300 --dt 0.004 --horizon 50",
      "oracle --problem employer --epsilon 0 --points 1000",
      "sweep --kind strong-mixing --seed 9 --paths 200 --dt 0.004 --horizon 50",
  };
  bool ok = true;
  std::ostringstream detail;
  int idx = 0;
  for (const std::string& args : commands) {
    int code1 = 0, code2 = 0, code4 = 0;
    const fs::path cap = dir / ("cap" + std::to_string(idx++) + ".txt");
    const std::string first = run_capture("HIREFIRE_THREADS=1 ", args, cap, code1);
    const std::string second = run_capture("HIREFIRE_THREADS=1 ", args, cap, code2);
    const std::string sharded = run_capture("HIREFIRE_THREADS=4 ", args, cap, code4);
    const bool same = first == second && first == sharded && code1 == code2 &&
                      code1 == code4 && code1 == 0;
    ok = ok && same;
    if (!same) detail << "mismatch on: " << args << "; ";
  }
  if (ok) detail << "6 commands byte-identical across reruns and shard counts {1,4}";
  return {ok, detail.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 threshold reproduction (closed form + oracle + runtime)", criterion_threshold},
      {"C2 value-function asymptotes", criterion_asymptotes},
      {"C3 oracle agreement and refinement order", criterion_oracle_agreement},
      {"C4 semi-separating indifference via Monte Carlo", criterion_indifference},
      {"C5 no-profitable-deviation sweeps", criterion_deviation_sweeps},
      {"C6 employer estimator agreement", criterion_estimator_agreement},
      {"C7 reduction identities", criterion_reductions},
      {"C8 extension values", criterion_extension_values},
      {"C9 filter sanity (martingale + coupling order)", criterion_filter_sanity},
      {"C10 determinism", criterion_determinism},
  };

  int failures = 0;
  for (auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome{false, "exception"};
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << " — "
              << outcome.detail << " [" << g9(secs) << " s]" << std::endl;
    if (!outcome.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " failed")
            << std::endl;
  return failures;
}
