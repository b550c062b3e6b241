// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/linesearch.hpp"

#include <cmath>

namespace saddleopt {

void LineSearchConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("line search: alpha must be in (0,1]");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("line search: beta must be in (0,1)");
  if (!(sigma > 0.0)) throw std::invalid_argument("line search: sigma must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("line search: epsilon must be positive");
  if (subroutine_cap < 1) throw std::invalid_argument("line search: subroutine cap must be >= 1");
}

namespace {

struct Trial {
  bool admissible = false;
  std::optional<SubsolverResult> sol;
};

Trial test_trial(double log_eta, const SearchContext& ctx, LineSearchOutcome& out) {
  const double eta = std::exp(log_eta);
  out.calls += 1;
  out.trial_log_etas.push_back(log_eta);
  Trial t;
  try {
    t.sol = ctx.subsolve(eta);
  } catch (const TrialRejectedError&) {
    return t;  // inadmissible, no candidate point
  }
  out.inner_iterations += t.sol->inner_iterations;
  if (t.sol->inclusion_residual > out.max_inclusion_residual) {
    out.max_inclusion_residual = t.sol->inclusion_residual;
  }
  const Vector fz = ctx.operator_value(t.sol->z);
  const Vector pz = ctx.prediction(t.sol->z);
  const double lhs = eta * (fz - pz).norm();
  const double rhs = 0.5 * ctx.alpha * (t.sol->z - ctx.z_minus).norm();
  t.admissible = lhs <= rhs;
  return t;
}

// Log-type bisection: probe the geometric mean until eta_up/eta_lo <= 1/beta.
// The log-gap halves each step.
void bisect(const SearchContext& ctx, double log_beta, double& log_lo,
            SubsolverResult& lo_sol, double& log_up, LineSearchOutcome& out) {
  const double gap_target = -log_beta * (1.0 + 1e-12);
  int guard = 0;
  while (log_up - log_lo > gap_target) {
    if (++guard > 200) throw std::logic_error("line search: bisection failed to shrink");
    const double mid = 0.5 * (log_lo + log_up);
    Trial t = test_trial(mid, ctx, out);
    if (t.admissible) {
      log_lo = mid;
      lo_sol = std::move(*t.sol);
    } else {
      log_up = mid;
    }
  }
}

}  // namespace

std::pair<bool, std::optional<SubsolverResult>> is_admissible(double eta,
                                                              const SearchContext& ctx) {
  if (!(eta > 0.0)) throw std::invalid_argument("is_admissible: eta must be positive");
  LineSearchOutcome scratch;
  Trial t = test_trial(std::log(eta), ctx, scratch);
  return {t.admissible, std::move(t.sol)};
}

LineSearchOutcome line_search(const SearchContext& ctx, const LineSearchConfig& config) {
  config.validate();
  LineSearchOutcome out;
  const double log_sigma = std::log(config.sigma);
  const double log_beta = std::log(config.beta);

  Trial first = test_trial(log_sigma, ctx, out);

  if (!first.admissible) {
    // Backtrack: trial after i steps is sigma * beta^(2^i - 1).
    double log_up = log_sigma;
    double log_trial = log_sigma + log_beta;
    double log_lo = 0.0;
    SubsolverResult lo_sol;
    bool found = false;
    for (int i = 1; i <= config.subroutine_cap; ++i) {
      if (log_trial < -700.0) break;  // stepsize underflow, hopeless
      Trial t = test_trial(log_trial, ctx, out);
      out.bracket_steps = i;
      if (t.admissible) {
        log_lo = log_trial;
        lo_sol = std::move(*t.sol);
        found = true;
        break;
      }
      log_up = log_trial;
      log_trial = log_beta + 2.0 * log_trial - log_sigma;
    }
    if (!found) {
      throw LineSearchCapError("line search: backtracking found no admissible stepsize",
                               0.0, std::exp(log_up));
    }
    out.path = LineSearchOutcome::Path::Backtracked;
    bisect(ctx, log_beta, log_lo, lo_sol, log_up, out);
    out.status = LineSearchStatus::BetaOptimal;
    out.eta = std::exp(log_lo);
    out.eta_lo = out.eta;
    out.eta_up = std::exp(log_up);
    out.z_next = std::move(lo_sol.z);
    out.inclusion_residual = lo_sol.inclusion_residual;
    return out;
  }

  if (!config.with_advancing) {
    out.status = LineSearchStatus::AcceptedInitial;
    out.eta = config.sigma;
    out.eta_lo = config.sigma;
    out.eta_up = 0.0;
    out.z_next = std::move(first.sol->z);
    out.inclusion_residual = first.sol->inclusion_residual;
    return out;
  }

  // Advance: trial after i steps is sigma * beta^-(2^i - 1). The residual of
  // the best admissible point is checked before each new trial, so a run that
  // never meets an inadmissible stepsize still terminates.
  double log_lo = log_sigma;
  SubsolverResult lo_sol = std::move(*first.sol);
  double log_trial = log_sigma - log_beta;
  double log_up = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= config.subroutine_cap + 1; ++i) {
    const double res_lo = ctx.residual_value(lo_sol.z);
    if (res_lo <= config.epsilon) {
      out.path = LineSearchOutcome::Path::Advanced;
      out.status = LineSearchStatus::EarlyExitEpsilon;
      out.eta = std::exp(log_lo);
      out.eta_lo = out.eta;
      out.eta_up = 0.0;
      out.z_next = std::move(lo_sol.z);
      out.inclusion_residual = lo_sol.inclusion_residual;
      out.residual_at_accept = res_lo;
      return out;
    }
    if (i > config.subroutine_cap || log_trial > 700.0) {
      throw LineSearchCapError("line search: advancing exceeded its step cap",
                               std::exp(log_lo), std::exp(log_trial));
    }
    Trial t = test_trial(log_trial, ctx, out);
    out.bracket_steps = i;
    if (!t.admissible) {
      log_up = log_trial;
      bracketed = true;
      break;
    }
    log_lo = log_trial;
    lo_sol = std::move(*t.sol);
    log_trial = 2.0 * log_trial - log_beta - log_sigma;
  }
  if (!bracketed) {
    throw LineSearchCapError("line search: advancing exceeded its step cap",
                             std::exp(log_lo), std::exp(log_trial));
  }
  out.path = LineSearchOutcome::Path::Advanced;
  bisect(ctx, log_beta, log_lo, lo_sol, log_up, out);
  out.status = LineSearchStatus::BetaOptimal;
  out.eta = std::exp(log_lo);
  out.eta_lo = out.eta;
  out.eta_up = std::exp(log_up);
  out.z_next = std::move(lo_sol.z);
  out.inclusion_residual = lo_sol.inclusion_residual;
  return out;
}

}  // namespace saddleopt
