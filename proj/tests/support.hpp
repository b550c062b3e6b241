// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
//
// Shared helpers for the unit and acceptance suites: independent
// re-verification of accepted steps, call-count audits, and test-only
// closed-form oracles.
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "saddleopt/solvers.hpp"

namespace saddleopt::testsupport {

struct ReverifyConfig {
  PredictorKind kind = PredictorKind::Constant;
  int p = 3;
  double lambda = 0.0;
  double alpha = 0.5;
  double beta = 0.5;
  double inner_tol = 1e-12;
  long inner_cap = 200000;
};

inline Predictor build_predictor(const SaddleProblem& prob, const MirrorMap& map,
                                 const ReverifyConfig& rc, const Vector& base) {
  switch (rc.kind) {
    case PredictorKind::Constant:
      return Predictor::constant(prob, base);
    case PredictorKind::AffineTaylor:
      return Predictor::affine_taylor(prob, base);
    case PredictorKind::RegularizedTaylor:
      return Predictor::regularized_taylor(prob, map, rc.p, rc.lambda, base);
  }
  throw std::logic_error("build_predictor: unknown kind");
}

// Independent admissibility probe for one recorded step: rebuilds the
// prediction at z_k with the stored correction vector and runs the matching
// subsolver once.
inline std::pair<bool, std::optional<SubsolverResult>> probe_admissible(
    const SaddleProblem& prob, const MirrorMap& map, const ReverifyConfig& rc,
    const Vector& z_k, const Vector& v, double eta) {
  const Predictor pred = build_predictor(prob, map, rc, z_k);
  SearchContext ctx;
  ctx.z_minus = z_k;
  ctx.alpha = rc.alpha;
  ctx.operator_value = [&prob](const Vector& z) { return prob.F(z); };
  ctx.prediction = [&pred](const Vector& z) { return pred(z); };
  ctx.residual_value = [&prob](const Vector& z) { return residual(prob, z); };
  switch (rc.kind) {
    case PredictorKind::Constant:
      ctx.subsolve = [&](double e) {
        return solve_first_order(SubsolverRequest{e, pred, v, z_k, map, prob});
      };
      break;
    case PredictorKind::AffineTaylor:
      ctx.subsolve = [&](double e) {
        return solve_affine_inclusion(SubsolverRequest{e, pred, v, z_k, map, prob});
      };
      break;
    case PredictorKind::RegularizedTaylor:
      ctx.subsolve = [&](double e) {
        return solve_regularized_taylor_inclusion(
            SubsolverRequest{e, pred, v, z_k, map, prob}, rc.inner_tol, rc.inner_cap);
      };
      break;
  }
  return is_admissible(eta, ctx);
}

// Re-checks every recorded step against its certificate: accepted stepsizes
// must be admissible, the stored witness inadmissible with ratio at most
// 1/beta, and the per-search call count must stay within the two budget
// formulas. Returns the number of violations; messages accumulate into `why`.
inline int certify_trajectory(const SaddleProblem& prob, const MirrorMap& map,
                              const Trajectory& traj, const ReverifyConfig& rc,
                              bool with_advancing, std::string* why = nullptr) {
  int bad = 0;
  auto complain = [&](long k, const std::string& msg) {
    ++bad;
    if (why != nullptr) *why += "step " + std::to_string(k) + ": " + msg + "\n";
  };
  const double log_inv_beta = -std::log(rc.beta);
  for (long k = 0; k < traj.iterations(); ++k) {
    const StepRecord& rec = traj.steps[static_cast<size_t>(k)];
    if (rec.status == StepStatus::FixedStep) continue;
    const Vector& z_k = traj.iterate(k);
    if (rec.status == StepStatus::BetaOptimal || rec.status == StepStatus::AcceptedInitial) {
      const auto [ok_lo, sol] = probe_admissible(prob, map, rc, z_k, rec.v, rec.eta);
      if (!ok_lo) complain(k, "accepted stepsize fails the admissibility test");
    }
    if (rec.status == StepStatus::BetaOptimal) {
      bool up_admissible = false;
      try {
        up_admissible = probe_admissible(prob, map, rc, z_k, rec.v, rec.eta_up).first;
      } catch (const TrialRejectedError&) {
        up_admissible = false;
      }
      if (up_admissible) complain(k, "witness stepsize is admissible");
      if (rec.eta_up / rec.eta > (1.0 + 1e-12) / rc.beta) {
        complain(k, "witness ratio exceeds 1/beta");
      }
      if (!(rec.eta < rec.eta_up)) complain(k, "witness does not exceed the stepsize");

      const double ratio2 =
          with_advancing
              ? std::max(rec.sigma / rec.eta, rec.eta / rec.sigma) *
                    std::max(rec.sigma / rec.eta, rec.eta / rec.sigma)
              : (rec.sigma * rec.sigma) / (rec.eta * rec.eta);
      const double budget =
          2.0 * std::log2(std::log(ratio2 / (rc.beta * rc.beta)) / log_inv_beta);
      if (static_cast<double>(rec.calls) > budget + 1e-9) {
        complain(k, "call count exceeds the per-search budget");
      }
    }
    if (rec.status == StepStatus::AcceptedInitial && rec.calls != 1) {
      complain(k, "accepted initial stepsize should cost exactly one call");
    }
  }
  return bad;
}

// Test-only restricted gap for the quartic problem with mu = 0 over
// R^m x {||y|| <= R2}; the inner minimization has a closed form.
inline double restricted_gap_quartic(const SaddleProblem& prob, const Vector& z, double R2) {
  const ProbP3Data& d = *prob.prob_p3();
  if (d.mu != 0.0) throw std::invalid_argument("restricted_gap_quartic: needs mu == 0");
  const auto x = z.head(prob.m);
  const auto y = z.tail(prob.n);
  const double xn2 = x.squaredNorm();
  const double aty = (d.A.transpose() * y).norm();
  return d.c3 / 24.0 * xn2 * xn2 + R2 * (d.A * x - d.b).norm() +
         0.75 * std::cbrt(6.0 / d.c3) * std::pow(aty, 4.0 / 3.0) + d.b.dot(y);
}

// Bregman radius of the maximizers behind restricted_gap_quartic; pairs with
// the stepsize-sum bound of the averaged-iterate analysis.
inline double quartic_gap_diameter(const SaddleProblem& prob, const Vector& zbar, double R2) {
  const ProbP3Data& d = *prob.prob_p3();
  const double aty = (d.A.transpose() * zbar.tail(prob.n)).norm();
  const double t = std::cbrt(6.0 * aty / d.c3);
  return 0.5 * (t * t + R2 * R2);
}

}  // namespace saddleopt::testsupport
