// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/subsolvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace saddleopt {

double prox_l1_box(double z, double t, double R) {
  if (t < 0.0) throw std::invalid_argument("prox_l1_box: t must be >= 0");
  if (!(R > 0.0)) throw std::invalid_argument("prox_l1_box: R must be positive");
  const double a = std::abs(z);
  if (a <= t) return 0.0;
  const double s = z > 0.0 ? 1.0 : -1.0;
  if (a <= t + R) return (a - t) * s;
  return R * s;
}

namespace {

Vector prox_step(const SaddleProblem& prob, const Vector& target, double t) {
  const double R = prob.feasible == FeasibleKind::Box
                       ? prob.box_radius
                       : std::numeric_limits<double>::infinity();
  Vector z(target.size());
  for (Eigen::Index i = 0; i < target.size(); ++i) z[i] = prox_l1_box(target[i], t, R);
  return z;
}

void require_euclidean(const MirrorMap& map, const char* where) {
  if (!map.is_euclidean()) {
    throw std::invalid_argument(std::string(where) + ": only the Euclidean map has this closed form");
  }
}

}  // namespace

SubsolverResult solve_first_order(const SubsolverRequest& req) {
  if (req.predictor.kind() != PredictorKind::Constant) {
    throw std::invalid_argument("solve_first_order: prediction must be constant");
  }
  require_euclidean(req.map, "solve_first_order");
  if (!(req.eta > 0.0)) throw std::invalid_argument("solve_first_order: eta must be positive");

  const Vector g = req.eta * req.predictor.f_at_base() + req.v_minus;
  const double t =
      req.prob.composite == CompositeKind::L1 ? req.eta * req.prob.l1_weight : 0.0;
  SubsolverResult out;
  out.z = prox_step(req.prob, req.z_minus - g, t);
  return out;
}

SubsolverResult solve_affine_inclusion(const SubsolverRequest& req) {
  if (req.predictor.kind() != PredictorKind::AffineTaylor) {
    throw std::invalid_argument("solve_affine_inclusion: prediction must be the affine model");
  }
  require_euclidean(req.map, "solve_affine_inclusion");
  if (!req.prob.smooth_unconstrained()) {
    throw std::invalid_argument("solve_affine_inclusion: needs an unconstrained smooth problem");
  }
  if (!(req.eta > 0.0)) throw std::invalid_argument("solve_affine_inclusion: eta must be positive");

  const Eigen::Index d = req.z_minus.size();
  Matrix M = Matrix::Identity(d, d) + req.eta * req.predictor.jacobian_at_base();
  const Vector rhs = -(req.eta * req.predictor.f_at_base() + req.v_minus);
  Eigen::PartialPivLU<Matrix> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    throw IllConditionedError("solve_affine_inclusion: system reciprocal condition " +
                              std::to_string(rc));
  }
  SubsolverResult out;
  const Vector step = lu.solve(rhs);
  out.z = req.z_minus + step;
  out.inclusion_residual = (M * step - rhs).norm();
  return out;
}

namespace {

// Damped Newton on G(w) = 0. The Jacobian I + eta*DP(w) has symmetric part
// >= I for a monotone prediction, so the Newton direction is a descent
// direction for ||G||^2 at every point.
SubsolverResult newton_inclusion(const SubsolverRequest& req, double inner_tol,
                                 long inner_cap, const Vector& start) {
  const Eigen::Index d = req.z_minus.size();
  SubsolverResult out;
  Vector w = start;
  auto G = [&](const Vector& v) -> Vector {
    return req.eta * req.predictor(v) + req.v_minus + (v - req.z_minus);
  };
  Vector g = G(w);
  double gn = g.norm();
  for (long it = 0; it <= inner_cap; ++it) {
    if (gn <= inner_tol) {
      out.z = std::move(w);
      out.inner_iterations = static_cast<int>(it);
      out.inclusion_residual = gn;
      return out;
    }
    if (it == inner_cap) break;
    Matrix J = Matrix::Identity(d, d) + req.eta * req.predictor.pointwise_jacobian(w);
    Eigen::PartialPivLU<Matrix> lu(J);
    if (!(lu.rcond() > 1e-16)) {
      throw IllConditionedError("regularized Taylor inclusion: singular Newton system");
    }
    const Vector dir = lu.solve(-g);
    double step = 1.0;
    Vector w_trial;
    Vector g_trial;
    double gn_trial;
    while (true) {
      w_trial = w + step * dir;
      g_trial = G(w_trial);
      gn_trial = g_trial.norm();
      if (gn_trial <= (1.0 - 0.25 * step) * gn || step < 1e-12) break;
      step *= 0.5;
    }
    if (gn_trial >= gn) {
      // no descent left: the residual floor of this stepsize sits above the
      // tolerance, so the trial is rejected as too aggressive
      throw TrialRejectedError("regularized Taylor inclusion: stalled at residual " +
                               std::to_string(gn));
    }
    w = std::move(w_trial);
    g = std::move(g_trial);
    gn = gn_trial;
  }
  throw InnerSolveError("regularized Taylor inclusion: iteration cap reached at residual " +
                        std::to_string(gn));
}

// First-order optimistic iteration on the reduced operator, with the
// non-advancing line search picking each inner stepsize. Handles composite
// and box structure through the scaled prox; the reduced operator is
// 1-strongly monotone, so the correction coefficient uses modulus 1.
SubsolverResult optimistic_inclusion(const SubsolverRequest& req, double inner_tol,
                                     long inner_cap, const Vector& start) {
  auto G = [&](const Vector& v) -> Vector {
    return req.eta * req.predictor(v) + req.v_minus +
           (req.map.grad(v) - req.map.grad(req.z_minus));
  };
  auto inner_res = [&](const Vector& v) {
    return structured_inclusion_residual(req.prob, v, G(v), req.eta);
  };

  SubsolverResult out;
  Vector w = start;
  Vector g_prev = G(w);
  Vector g_curr = g_prev;
  long used = 0;  // line-search subsolver calls, the inner work unit
  double s_prev = 0.0;
  double sigma = 1.0 / (1.0 + g_curr.norm());
  const double alpha = 0.5;
  const double beta = 0.5;

  for (;;) {
    const double res = structured_inclusion_residual(req.prob, w, g_curr, req.eta);
    if (res <= inner_tol) {
      out.z = std::move(w);
      out.inner_iterations = static_cast<int>(used);
      out.inclusion_residual = res;
      return out;
    }
    if (used >= inner_cap) {
      throw InnerSolveError("regularized Taylor inclusion: iteration cap reached at residual " +
                            std::to_string(res));
    }
    const double s_hat = s_prev / (1.0 + s_prev);
    const Vector correction = s_hat * (g_curr - g_prev);
    SearchContext ctx;
    const Vector w_base = w;
    const Vector g_base = g_curr;
    ctx.subsolve = [&, w_base, g_base](double s) {
      SubsolverResult r;
      const double t = req.prob.composite == CompositeKind::L1
                           ? s * req.eta * req.prob.l1_weight
                           : 0.0;
      const double R = req.prob.feasible == FeasibleKind::Box
                           ? req.prob.box_radius
                           : std::numeric_limits<double>::infinity();
      Vector target = w_base - (s * g_base + correction);
      r.z.resize(target.size());
      for (Eigen::Index i = 0; i < target.size(); ++i) r.z[i] = prox_l1_box(target[i], t, R);
      return r;
    };
    ctx.operator_value = G;
    ctx.prediction = [g_base](const Vector&) { return g_base; };
    ctx.residual_value = inner_res;
    ctx.z_minus = w_base;
    ctx.alpha = alpha;

    LineSearchConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.sigma = sigma;
    cfg.epsilon = inner_tol;
    cfg.with_advancing = false;
    LineSearchOutcome step = line_search(ctx, cfg);
    used += step.calls;
    g_prev = std::move(g_curr);
    w = step.z_next;
    g_curr = G(w);
    s_prev = step.eta;
    sigma = step.eta / beta;
  }
}

}  // namespace

SubsolverResult solve_regularized_taylor_inclusion(const SubsolverRequest& req,
                                                   double inner_tol, long inner_cap,
                                                   const std::optional<Vector>& warm_start) {
  if (req.predictor.kind() != PredictorKind::RegularizedTaylor) {
    throw std::invalid_argument(
        "solve_regularized_taylor_inclusion: prediction must be a regularized Taylor model");
  }
  if (!(req.eta > 0.0)) {
    throw std::invalid_argument("solve_regularized_taylor_inclusion: eta must be positive");
  }
  if (!(inner_tol > 0.0)) {
    throw std::invalid_argument("solve_regularized_taylor_inclusion: inner_tol must be positive");
  }

  // The base point solves the inclusion outright when its own residual
  // already vanishes (e.g. zero operator value and zero correction).
  {
    const Vector g0 = req.eta * req.predictor(req.z_minus) + req.v_minus;
    if (structured_inclusion_residual(req.prob, req.z_minus, g0, req.eta) <= inner_tol) {
      SubsolverResult out;
      out.z = req.z_minus;
      out.inclusion_residual = 0.0;
      return out;
    }
  }

  Vector start = warm_start.value_or(req.z_minus);
  if (start.size() != req.z_minus.size() || !req.prob.is_feasible(start)) start = req.z_minus;

  if (req.prob.smooth_unconstrained() && req.map.is_euclidean() &&
      req.predictor.has_pointwise_jacobian()) {
    return newton_inclusion(req, inner_tol, inner_cap, start);
  }
  return optimistic_inclusion(req, inner_tol, inner_cap, start);
}

}  // namespace saddleopt
