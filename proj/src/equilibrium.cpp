#include "hirefire/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hirefire/errors.hpp"

namespace hirefire {

namespace {

// (pi/(1-pi) * (1-b)/b)^gamma1, the decaying homogeneous factor shared by
// the closed-form value functions. Tends to 0 as pi -> 1 since gamma1 < 0.
double odds_ratio_pow(double pi, double b, double gamma1) {
  const double ratio = (pi * (1.0 - b)) / ((1.0 - pi) * b);
  return std::pow(ratio, gamma1);
}

// Coefficient A1 of the decaying homogeneous solution (1-pi)(pi/(1-pi))^gamma1
// in the employer's value, obtained by eliminating the value condition
// V(b) = -eps against the smooth-fit condition V'(b) = 0.
double smooth_fit_coefficient(const GameParams& gp, const DerivedQuantities& d, double b) {
  return -(gp.mu1 - gp.mu0) * b / (gp.r * (d.gamma1 - b)) *
         std::pow((1.0 - b) / b, d.gamma1);
}

double employer_value_at(double pi, const GameParams& gp, const DerivedQuantities& d,
                         double b, double stopped_value) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainViolation("belief pi must lie in [0,1]");
  if (pi <= b) return stopped_value;
  if (pi >= 1.0) return (gp.mu1 - gp.c1) / gp.r;
  const double a1 = smooth_fit_coefficient(gp, d, b);
  return a1 * (1.0 - pi) * std::pow(pi / (1.0 - pi), d.gamma1) +
         (gp.mu0 - gp.c1 + (gp.mu1 - gp.mu0) * pi) / gp.r;
}

// Indifference point for a generic odds multiplier k: the belief whose odds
// are b/(1-b) * k.
double indifference_from_multiplier(double b, double k) {
  return b * k / (1.0 - b + b * k);
}

Equilibrium benchmark_structure(const GameParams& gp, const DerivedQuantities& d, double b,
                                double p_hat, double prior) {
  Equilibrium eq;
  const double a0 = weak_type_mixing(prior, p_hat);
  eq.a_star = {a0, 1.0};
  eq.belief = {0.0, std::max(p_hat, prior)};
  eq.threshold_low = StoppingRule::never_stop();
  eq.threshold_high = StoppingRule::at_threshold(b);
  eq.regime = prior < p_hat ? Regime::SemiSeparating : Regime::Pooling;
  // Semi-separating: indifference pins the weak value at c0/r. Pooling: the
  // weak type claims c1 for sure and collects U(prior) >= c0/r.
  eq.value_weak = eq.regime == Regime::SemiSeparating
                      ? gp.c0 / gp.r
                      : employee_value_weak(prior, gp, d, b);
  return eq;
}

}  // namespace

double stopping_threshold(const GameParams& gp, const DerivedQuantities& d) {
  return -(gp.c1 - gp.mu0) * d.gamma1 /
         (gp.mu1 - gp.c1 - (gp.mu1 - gp.mu0) * d.gamma1);
}

double employer_value(double pi, const GameParams& gp, const DerivedQuantities& d, double b) {
  return employer_value_at(pi, gp, d, b, 0.0);
}

double employee_value_weak(double pi, const GameParams& gp, const DerivedQuantities& d,
                           double b) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainViolation("belief pi must lie in [0,1]");
  if (pi <= b) return 0.0;
  if (pi >= 1.0) return gp.c1 / gp.r;
  return gp.c1 / gp.r * (1.0 - odds_ratio_pow(pi, b, d.gamma1));
}

double indifference_point(const GameParams& gp, const DerivedQuantities& d, double b) {
  const double k = std::pow(1.0 - gp.c0 / gp.c1, 1.0 / d.gamma1);
  return indifference_from_multiplier(b, k);
}

double weak_type_mixing(double p, double p_hat) {
  if (p >= p_hat) return 1.0;
  // Inverts the posterior condition p / (p + (1-p) a0) = p_hat; equivalent
  // to the display p(1-b) / ((1-p) b (1-c0/c1)^(1/gamma1)).
  return p * (1.0 - p_hat) / (p_hat * (1.0 - p));
}

Equilibrium assemble_pbe(const GameParams& gp) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  return benchmark_structure(gp, d, b, p_hat, gp.p);
}

FiringCostParams validate_firing_cost(const GameParams& gp, double epsilon) {
  const double cap = (gp.c1 - gp.mu0) / gp.r;
  if (!(epsilon > 0.0 && epsilon < cap)) {
    std::ostringstream os;
    os << "firing cost epsilon = " << epsilon << " must lie in (0, " << cap << ")";
    throw DomainViolation(os.str());
  }
  return FiringCostParams{epsilon};
}

double firing_cost_threshold(const GameParams& gp, const DerivedQuantities& d,
                             const FiringCostParams& fc) {
  const double er = fc.epsilon * gp.r;
  return -(gp.c1 - gp.mu0 - er) * d.gamma1 /
         (gp.mu1 - gp.c1 + er - (gp.mu1 - gp.mu0) * d.gamma1);
}

double employer_value_firing(double pi, const GameParams& gp, const DerivedQuantities& d,
                             const FiringCostParams& fc) {
  const double b_eps = firing_cost_threshold(gp, d, fc);
  return employer_value_at(pi, gp, d, b_eps, -fc.epsilon);
}

FiringCostResult firing_cost_pbe(const GameParams& gp, const FiringCostParams& fc) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b_eps = firing_cost_threshold(gp, d, fc);
  const double k = std::pow(1.0 - gp.c0 / gp.c1, 1.0 / d.gamma1);
  const double p_hat_eps = indifference_from_multiplier(b_eps, k);
  const double posterior = std::max(p_hat_eps, gp.p);
  const double gate = employer_value_at(posterior, gp, d, b_eps, -fc.epsilon);

  FiringCostResult result;
  result.gate_value = gate;
  result.hire = gate > 0.0;
  if (result.hire) {
    result.eq = benchmark_structure(gp, d, b_eps, p_hat_eps, gp.p);
  } else {
    // No hiring: both types claim c0, never fired on path; an off-path high
    // claim is rejected at once. Both values are c0/r.
    Equilibrium eq;
    eq.a_star = {0.0, 0.0};
    eq.belief = {gp.p, gp.p};
    eq.threshold_low = StoppingRule::never_stop();
    eq.threshold_high = StoppingRule::stop_immediately();
    eq.regime = Regime::NoHire;
    eq.value_weak = gp.c0 / gp.r;
    eq.value_strong = gp.c0 / gp.r;
    result.eq = eq;
  }
  return result;
}

TypeUncertaintyParams validate_type_uncertainty(double p1, double q) {
  if (!(p1 > 0.0 && p1 < 1.0)) throw DomainViolation("p1 must lie in (0,1)");
  if (!(q > 0.0 && q <= 1.0)) throw DomainViolation("q must lie in (0,1]");
  return TypeUncertaintyParams{p1, q};
}

Equilibrium type_uncertainty_pbe(const GameParams& gp, const TypeUncertaintyParams& tu) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  if (!(tu.q > p_hat)) {
    std::ostringstream os;
    os << "type-uncertainty extension assumes q > p_hat, but q = " << tu.q
       << " <= p_hat = " << p_hat;
    throw AssumptionViolation(os.str());
  }
  const double prior = tu.p1 * tu.q;  // effective prior of the strong type

  Equilibrium eq;
  // a_star components condition on the belief signal: weak-belief players
  // mix, strong-belief players always claim c1. Interior mixing makes the
  // Bayes posterior p1 q / (p1 + (1-p1) a0) equal p_hat.
  const double a0 =
      prior >= p_hat ? 1.0 : tu.p1 * (tu.q - p_hat) / (p_hat * (1.0 - tu.p1));
  eq.a_star = {a0, 1.0};
  eq.belief = {0.0, std::max(p_hat, prior)};
  eq.threshold_low = StoppingRule::never_stop();
  eq.threshold_high = StoppingRule::at_threshold(b);
  eq.regime = prior < p_hat ? Regime::SemiSeparating : Regime::Pooling;
  eq.value_weak = eq.regime == Regime::SemiSeparating
                      ? gp.c0 / gp.r
                      : employee_value_weak(prior, gp, d, b);
  return eq;
}

InterviewParams validate_interview(const GameParams& gp, double q) {
  const double lo = gp.c0 / gp.c1;
  if (!(q > lo && q < 1.0)) {
    std::ostringstream os;
    os << "interview pass probability q = " << q << " must lie in (c0/c1, 1) = (" << lo
       << ", 1)";
    throw DomainViolation(os.str());
  }
  return InterviewParams{q};
}

double interview_indifference(const GameParams& gp, const DerivedQuantities& d, double b,
                              const InterviewParams& iv) {
  // q U(P_hat) = c0/r gives odds(P_hat) = odds(b) * (1 - c0/(q c1))^(1/gamma1).
  const double k = std::pow(1.0 - gp.c0 / (iv.q * gp.c1), 1.0 / d.gamma1);
  const double odds = b / (1.0 - b) * k;
  return odds / (1.0 + odds);
}

InterviewEquilibrium interview_pbe(const GameParams& gp, const InterviewParams& iv) {
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = interview_indifference(gp, d, b, iv);

  // The strong type always claims c1; the weak type mixes so that, when
  // interior, the posterior after (c1, strong result) lands on P_hat.
  const double a0 =
      std::min(gp.p * (1.0 - p_hat) / (p_hat * (1.0 - gp.p) * iv.q), 1.0);
  const double posterior_strong =
      std::max(p_hat, gp.p / (gp.p + (1.0 - gp.p) * iv.q));
  // A weak test result reveals the weak type on either salary branch; a c0
  // claim reveals it as well since strong types never claim c0.
  return InterviewEquilibrium{
      {a0, 1.0},
      {0.0, 0.0, 0.0, posterior_strong},
      {StoppingRule::never_stop(), StoppingRule::never_stop(),
       StoppingRule::stop_immediately(), StoppingRule::at_threshold(b)},
      p_hat};
}

}  // namespace hirefire
