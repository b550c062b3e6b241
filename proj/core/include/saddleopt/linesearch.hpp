// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "saddleopt/types.hpp"

namespace saddleopt {

// Solution of one optimistic subproblem
//   0 in eta*P(z) + v_minus + eta*H(z) + grad Phi(z) - grad Phi(z_minus).
struct SubsolverResult {
  Vector z;
  int inner_iterations = 0;       // 0 for closed-form solves
  double inclusion_residual = 0.0;
};

// Everything a search needs to probe one trial stepsize: the subsolver
// callback (one invocation per admissibility test), the true operator and the
// prediction for the stepsize condition
//   eta * ||F(z(eta)) - P(z(eta))||_* <= (alpha/2) * ||z(eta) - z_minus||,
// and the problem residual used by the advancing early exit.
struct SearchContext {
  std::function<SubsolverResult(double eta)> subsolve;
  std::function<Vector(const Vector&)> operator_value;   // F
  std::function<Vector(const Vector&)> prediction;       // P
  std::function<double(const Vector&)> residual_value;   // res, advancing only
  Vector z_minus;
  double alpha = 0.5;
};

struct LineSearchConfig {
  double alpha = 0.5;       // in (0, 1]
  double beta = 0.5;        // in (0, 1)
  double sigma = 1.0;       // initial trial stepsize
  double epsilon = 1e-10;   // advancing early-exit residual target
  bool with_advancing = false;
  int subroutine_cap = 60;  // max steps per bracketing subroutine

  void validate() const;
};

enum class LineSearchStatus { BetaOptimal, AcceptedInitial, EarlyExitEpsilon };

struct LineSearchOutcome {
  double eta = 0.0;
  Vector z_next;
  int calls = 0;  // subsolver invocations, including the initial trial
  LineSearchStatus status = LineSearchStatus::AcceptedInitial;
  // Bracket endpoints when a bracketing subroutine ran; for a BetaOptimal
  // outcome eta_up is the certified inadmissible witness with
  // eta < eta_up <= eta / beta.
  double eta_lo = 0.0;
  double eta_up = 0.0;
  int bracket_steps = 0;  // steps taken in Backtrack or Advance
  enum class Path { None, Backtracked, Advanced } path = Path::None;
  double inclusion_residual = 0.0;   // of the accepted solve
  long inner_iterations = 0;         // summed over all subsolver calls
  double max_inclusion_residual = 0.0;
  std::optional<double> residual_at_accept;  // res(z_next) when evaluated
  std::vector<double> trial_log_etas;        // every trial tested, in order
};

// One admissibility test: invokes the subsolver exactly once and evaluates
// the stepsize condition. Ties count as admissible. Returns the verdict and,
// when the subsolver produced a point, the candidate solution.
std::pair<bool, std::optional<SubsolverResult>> is_admissible(double eta,
                                                              const SearchContext& ctx);

// Bracket-then-bisect stepsize search. Without advancing the outcome is either
// AcceptedInitial (sigma admissible, one call) or BetaOptimal; with advancing
// it is BetaOptimal or EarlyExitEpsilon. Stepsize arithmetic runs in log space
// so the squaring updates cannot overflow or drift.
LineSearchOutcome line_search(const SearchContext& ctx, const LineSearchConfig& config);

}  // namespace saddleopt
