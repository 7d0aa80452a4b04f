#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hirefire/equilibrium.hpp"
#include "hirefire/params.hpp"
#include "hirefire/sim.hpp"

namespace hirefire {

enum class SalaryLevel { Low, High };

/// Monte Carlo run configuration: path-level settings plus the sample size.
/// Work is sharded across threads (capped by HIREFIRE_THREADS); results are
/// independent of the shard count because every path owns its own stream
/// and the reduction is a fixed-shape pairwise tree.
struct McConfig {
  SimConfig sim;
  std::size_t n_paths = 100000;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< serialized as "stderr"
  std::size_t n_paths = 0;
  double truncation_bound = 0.0;  ///< e^{-r T} * rate / r for this estimator
  std::uint64_t clamp_events = 0;
};

/// E[ integral_0^tau e^{-rt} * salary dt ] under a type-conditional measure,
/// where tau is the first passage of the belief (started at pi_start) under
/// the rule, truncated at the horizon. Discounting uses the exact per-step
/// weight (e^{-r t} - e^{-r(t+dt)})/r. Degenerate rules shortcut to the
/// closed-form per-path value (zero variance).
MonteCarloEstimate estimate_employee_payoff(const GameParams& params, SalaryLevel salary,
                                            const StoppingRule& rule, double pi_start,
                                            Measure measure, const McConfig& cfg);

/// The two estimators of the employer's payoff; their agreement is the
/// filter-representation check. type_draw draws the type from
/// (pi_start, 1-pi_start) and integrates e^{-rt}(mu - c); filter walks the
/// belief under the employer measure and integrates
/// e^{-rt}(mu0 - c + (mu1-mu0) Pi_t).
struct EmployerPayoffEstimates {
  MonteCarloEstimate type_draw;
  MonteCarloEstimate filter;
};
EmployerPayoffEstimates estimate_employer_payoff(const GameParams& params,
                                                 SalaryLevel salary, const StoppingRule& rule,
                                                 double pi_start, const McConfig& cfg);

/// Semi-separating indifference: the weak type claiming the high salary
/// from the equilibrium posterior p_hat must earn c0/r. Throws
/// RegimeMismatch when p >= p_hat.
struct IndifferenceReport {
  MonteCarloEstimate estimate;
  double target = 0.0;       ///< c0/r
  double error = 0.0;        ///< |mean - target|
  double stat_budget = 0.0;  ///< 3 * stderr
  double det_budget = 0.0;   ///< truncation + dt-bias allowance
  double p_hat = 0.0;
  double b = 0.0;
  bool pass = false;
};
IndifferenceReport indifference_check(const GameParams& params, const McConfig& cfg);

/// A common-random-numbers sweep over deviation parameters. diff_* compare
/// each grid point against the equilibrium point path-by-path, which is the
/// variance-reduced comparison the pass verdict uses.
struct DeviationReport {
  std::string kind;
  std::vector<double> grid;
  std::vector<MonteCarloEstimate> values;
  std::size_t equilibrium_index = 0;
  std::vector<double> diff_mean;
  std::vector<double> diff_std_error;
  bool pass = false;
  std::string note;
};

/// Employer threshold sweep at fixed belief pi_start; grid must contain the
/// equilibrium threshold b. Pass: no grid point beats b by more than
/// 3 * stderr(diff) and the argmax sits within one grid step of b.
DeviationReport employer_deviation_sweep(const GameParams& params, const McConfig& cfg,
                                         std::vector<double> thresholds, double pi_start);

/// Weak-type mixing sweep against the fixed equilibrium response. In the
/// semi-separating regime the value is flat across a0 (indifference); in
/// the pooling regime it is nondecreasing.
DeviationReport weak_mixing_sweep(const GameParams& params, const McConfig& cfg,
                                  std::vector<double> a0_grid);

/// Strong-type mixing sweep; the value must peak at a1 = 1 and exceed c0/r.
DeviationReport strong_mixing_sweep(const GameParams& params, const McConfig& cfg,
                                    std::vector<double> a1_grid);

/// Theorem-1 values next to the all-c0 pooling value c0/r: the weak value
/// matches it (semi-separating) or dominates it (pooling); the strong value
/// must exceed it by more than 3 * stderr.
struct PoolingComparison {
  Regime regime = Regime::SemiSeparating;
  double pooling_value = 0.0;  ///< c0/r
  double weak_value = 0.0;     ///< closed form from the equilibrium
  MonteCarloEstimate strong_mc;
  bool strong_dominates = false;
  bool weak_dominates = false;
  bool pass = false;
};
PoolingComparison pooling_comparison(const GameParams& params, const McConfig& cfg);

/// Agreement of the two employer estimators across a belief grid.
struct Lemma1Point {
  double pi0 = 0.0;
  EmployerPayoffEstimates est;
  double diff = 0.0;
  double combined_se = 0.0;
  bool agree = false;
};
struct Lemma1Report {
  std::vector<Lemma1Point> points;
  bool pass = false;
};
Lemma1Report lemma1_agreement(const GameParams& params, const McConfig& cfg,
                              const std::vector<double>& pi_grid);

/// One row of the verification battery.
struct CheckRow {
  std::string name;
  double mean = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double stat_budget = 0.0;  ///< 3 * stderr
  double det_budget = 0.0;   ///< truncation + documented dt-bias allowance
  std::size_t n_paths = 0;
  bool pass = false;
};
struct BatteryReport {
  std::vector<CheckRow> rows;
  bool all_pass = false;
};

/// The standard battery: employer-measure martingale at t in {1,5,20},
/// closed-form anchors (c0/r, (mu0-c0)/r, U(p_hat), V at the posterior),
/// estimator agreement on a 5-point belief grid, and the pooling-dominance
/// comparison. lemma1_paths below cfg.n_paths keeps the agreement rows at a
/// cheaper sample size (0 means cfg.n_paths / 10).
BatteryReport run_standard_battery(const GameParams& params, const McConfig& cfg,
                                   std::size_t lemma1_paths = 0);

/// Documented dt-bias allowance added to deterministic error budgets of
/// first-passage payoff estimates (grid-point passage detection delays
/// stopping by O(sqrt(dt)) in expectation).
inline constexpr double kDtBiasAllowance = 2e-3;

}  // namespace hirefire
