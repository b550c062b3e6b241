// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <optional>

#include "saddleopt/linesearch.hpp"
#include "saddleopt/problems.hpp"

namespace saddleopt {

// One optimistic subproblem
//   0 in eta*P(z) + v_minus + eta*H(z) + grad Phi(z) - grad Phi(z_minus),
// for a given stepsize, prediction, correction vector and base point. The
// correction v_minus always arrives precomputed; subsolvers never rebuild it.
struct SubsolverRequest {
  double eta;
  const Predictor& predictor;
  const Vector& v_minus;
  const Vector& z_minus;
  const MirrorMap& map;
  const SaddleProblem& prob;
};

// Scalar prox of t*|.| plus the [-R, R] box, applied elementwise by the
// first-order subsolver: 0 inside the threshold, shrink by t in the middle
// band, saturate at the box face. R may be +inf (no box).
double prox_l1_box(double z, double t, double R);

// Closed-form solve for the constant prediction P = F(z_minus) in the
// Euclidean setup: coordinatewise prox of z_minus - (eta*F(z_minus) + v_minus).
SubsolverResult solve_first_order(const SubsolverRequest& req);

// Dense solve of (I + eta*DF(z_minus)) (z - z_minus) = -(eta*F(z_minus) + v_minus)
// for the affine prediction on unconstrained smooth problems. Throws
// IllConditionedError past a reciprocal-condition threshold of 1e-14.
SubsolverResult solve_affine_inclusion(const SubsolverRequest& req);

// Iterative solve for the regularized Taylor prediction. The reduced operator
//   G(w) = eta*P(w) + v_minus + grad Phi(w) - grad Phi(z_minus)
// is 1-strongly monotone; the solve runs a damped Newton iteration when the
// prediction exposes a pointwise Jacobian (unconstrained Euclidean case) and
// falls back to the first-order optimistic method with line search otherwise.
// Returns once the inclusion residual drops to inner_tol; throws
// InnerSolveError when inner_cap is exhausted first.
SubsolverResult solve_regularized_taylor_inclusion(
    const SubsolverRequest& req, double inner_tol, long inner_cap,
    const std::optional<Vector>& warm_start = std::nullopt);

}  // namespace saddleopt
