#pragma once

#include <array>
#include <optional>
#include <utility>

#include "hirefire/params.hpp"
#include "hirefire/stopping.hpp"

namespace hirefire {

enum class Regime { SemiSeparating, Pooling, NoHire };

/// A perfect Bayesian equilibrium of the benchmark game (and of the
/// firing-cost / type-uncertainty extensions, which share its shape).
///
/// a_star.first is the weak type's probability of claiming the high salary,
/// a_star.second the strong type's (in the type-uncertainty extension the
/// components condition on the belief signal instead of the type).
/// belief.{first,second} are the employer's posteriors of the strong type
/// after observing the low / high salary claim.
struct Equilibrium {
  std::pair<double, double> a_star;
  std::pair<double, double> belief;
  StoppingRule threshold_low = StoppingRule::never_stop();
  StoppingRule threshold_high = StoppingRule::never_stop();
  Regime regime = Regime::SemiSeparating;
  double value_weak = 0.0;
  /// Expected payoff of the strong type; has no closed form and is filled
  /// by Monte Carlo (verification) when requested, except in the NoHire
  /// regime where it is c0/r.
  std::optional<double> value_strong;
};

/// Firing-cost extension: the employer pays epsilon when firing at a time
/// in (0, inf); epsilon must lie in (0, (c1 - mu0)/r).
struct FiringCostParams {
  double epsilon;
};
FiringCostParams validate_firing_cost(const GameParams& params, double epsilon);

/// Own-type-uncertainty extension: the employee observes a binary belief
/// signal; p1 = P(strong belief), q = P(strong type | strong belief).
/// The effective prior of the strong type is p1 * q.
struct TypeUncertaintyParams {
  double p1;
  double q;
};
TypeUncertaintyParams validate_type_uncertainty(double p1, double q);

/// Interview extension: q = P(strong test result | weak type), constrained
/// to (c0/c1, 1); strong types always produce the strong result.
struct InterviewParams {
  double q;
};
InterviewParams validate_interview(const GameParams& params, double q);

/// Equilibrium of the interview extension. Beliefs and stopping rules are
/// quadruples indexed by (salary claim, test result) in the order
/// (c0,weak), (c0,strong), (c1,weak), (c1,strong).
struct InterviewEquilibrium {
  std::pair<double, double> a_star;  ///< (weak-type mixing, strong-type mixing)
  std::array<double, 4> belief;
  std::array<StoppingRule, 4> stopping;
  double p_hat_interview;  ///< indifference point P_hat with q * U(P_hat) = c0/r
};

// --- benchmark closed forms -------------------------------------------------

/// Optimal firing threshold b in (0,1) on the high-salary branch:
/// b = -(c1 - mu0) gamma1 / (mu1 - c1 - (mu1 - mu0) gamma1).
double stopping_threshold(const GameParams& params, const DerivedQuantities& derived);

/// Employer's value of facing a high-salary claim at belief pi, stopping at
/// threshold b. Zero for pi <= b; at pi = 1 returns the analytic limit
/// (mu1 - c1)/r.
double employer_value(double pi, const GameParams& params, const DerivedQuantities& derived,
                      double b);

/// Weak type's value of having claimed the high salary at employer belief
/// pi, against threshold b. Zero for pi <= b; at pi = 1 returns c1/r.
double employee_value_weak(double pi, const GameParams& params,
                           const DerivedQuantities& derived, double b);

/// The belief p_hat in (b,1) at which the weak type is indifferent between
/// the two salary claims: U(p_hat) = c0/r.
double indifference_point(const GameParams& params, const DerivedQuantities& derived,
                          double b);

/// Weak type's mixing probability: interior for p < p_hat (chosen so the
/// Bayes posterior after a high claim equals p_hat), and 1 otherwise.
double weak_type_mixing(double p, double p_hat);

/// Assembles the benchmark PBE triplet (strategies, beliefs, stopping rules)
/// for validated params. value_strong is left unset.
Equilibrium assemble_pbe(const GameParams& params);

// --- firing-cost extension ---------------------------------------------------

/// Threshold b_eps in (0, b), strictly decreasing in epsilon, from the
/// free-boundary problem with stopping payoff -epsilon.
double firing_cost_threshold(const GameParams& params, const DerivedQuantities& derived,
                             const FiringCostParams& fc);

/// Employer's value with firing cost: smooth fit at b_eps where the value
/// equals -epsilon; for pi <= b_eps returns the stopped value -epsilon.
/// Whether hiring at all beats this is a separate gate (see
/// firing_cost_pbe); this function is the post-hiring stopping value.
double employer_value_firing(double pi, const GameParams& params,
                             const DerivedQuantities& derived, const FiringCostParams& fc);

struct FiringCostResult {
  Equilibrium eq;
  bool hire;          ///< gate V_eps(p_hat_eps v p) > 0
  double gate_value;  ///< V_eps evaluated at the on-path posterior
};

/// PBE with firing costs: the benchmark structure with b_eps and the
/// corresponding indifference point when the hiring gate passes, otherwise
/// the no-hire equilibrium ((0,0), (never-stop, stop-immediately), (p,p)).
FiringCostResult firing_cost_pbe(const GameParams& params, const FiringCostParams& fc);

// --- type-uncertainty extension ----------------------------------------------

/// PBE when the employee only observes a belief signal. Requires q > p_hat
/// (AssumptionViolation otherwise). The benchmark prior params.p is
/// superseded by the effective prior p1 * q.
Equilibrium type_uncertainty_pbe(const GameParams& params, const TypeUncertaintyParams& tu);

// --- interview extension -------------------------------------------------------

/// Indifference point P_hat in (b,1) with q * U(P_hat) = c0/r.
double interview_indifference(const GameParams& params, const DerivedQuantities& derived,
                              double b, const InterviewParams& iv);

/// PBE with an interview test observed by the employer only.
InterviewEquilibrium interview_pbe(const GameParams& params, const InterviewParams& iv);

}  // namespace hirefire
