// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "saddleopt/linesearch.hpp"
#include "saddleopt/problems.hpp"
#include "saddleopt/subsolvers.hpp"

namespace saddleopt {

enum class Method { FirstOrderFixed, FirstOrderLS, SecondOrderLS, PthOrderLS, MirrorProx };

enum class StepStatus { FixedStep, AcceptedInitial, BetaOptimal, EarlyExitEpsilon };

struct SolverConfig {
  double mu = 0.0;             // modulus used by the correction-coefficient rule
  LineSearchConfig ls;         // alpha/beta/sigma for line-search methods
  long max_iters = 1000;
  double target_residual = 1e-9;
  double inner_tol = 0.0;      // 0: min(1e-10, 1e-3 * target_residual)
  long inner_cap = 200000;
  bool keep_iterates = true;   // store z_{k+1} and v_k in each record

  // optional diagnostics, evaluated per step when present
  std::function<double(const Vector&)> gap_oracle;  // at the running average
  std::optional<Vector> reference_point;            // for squared distances

  double resolved_inner_tol() const {
    return inner_tol > 0.0 ? inner_tol : std::min(1e-10, 1e-3 * target_residual);
  }
};

// One outer iteration: the step taken from z_k and the metrics of the
// resulting iterate z_{k+1}.
struct StepRecord {
  long k = 0;
  double eta = 0.0;
  double eta_hat = 0.0;
  int calls = 0;
  long inner_iterations = 0;
  StepStatus status = StepStatus::FixedStep;
  double eta_up = 0.0;  // certified inadmissible witness on BetaOptimal steps
  double sigma = 0.0;   // initial trial stepsize handed to the search
  double residual_next = 0.0;
  std::optional<double> gap;    // gap oracle at the eta-weighted running average
  std::optional<double> dist2;  // ||z_{k+1} - z_ref||^2
  double zeta_next = 1.0;       // prod_{l<=k} (1 + eta_l*mu)^-1
  double inclusion_residual = 0.0;
  double max_inclusion_residual = 0.0;
  Vector z_next;  // empty unless keep_iterates
  Vector v;       // correction vector used at this step (empty unless keep_iterates)
};

struct Trajectory {
  Vector z0;
  Vector final_point;  // last iterate, kept regardless of keep_iterates
  double mu = 0.0;     // modulus the zeta sequence was recorded with
  double initial_residual = 0.0;
  std::vector<StepRecord> steps;
  Vector weighted_sum;   // sum of eta_k * z_{k+1}
  double eta_sum = 0.0;
  long total_calls = 0;
  long total_inner = 0;
  bool reached_target = false;

  long iterations() const { return static_cast<long>(steps.size()); }
  // z_k for 0 <= k <= iterations(); requires keep_iterates
  const Vector& iterate(long k) const;
  // eta-weighted average of z_1..z_N
  Vector averaged() const;
  double final_residual() const;
};

// Correction coefficient: eta_prev / (1 + mu * eta_prev); equals eta_prev in
// the plain monotone regime.
double eta_hat_rule(double eta_prev, double mu);

// zeta_0 = 1, zeta_k = prod_{l<k} (1 + eta_l*mu)^-1, from the recorded steps.
std::vector<double> zeta_sequence(const Trajectory& traj);

// Simulated comparison sequence: zt_0 = 1 and
// 1/zt_k = 1 + (1/C) (sum_{l<k} 1/zt_l)^(3/2).
std::vector<double> simulated_zeta(double C, long N);

// Generic optimistic outer loop: build the prediction at each iterate, form
// the correction from the previous prediction, pick the stepsize (line search
// or fixed), and hand both to the matching subsolver. fixed_eta > 0 bypasses
// the search. Line-search methods warm start each search at eta_prev / beta.
Trajectory run_gom(const SaddleProblem& prob, const MirrorMap& map,
                   const std::function<Predictor(const Vector&)>& predictor_factory,
                   const SolverConfig& config, const Vector& z0,
                   bool with_advancing, double fixed_eta = 0.0);

// Fixed stepsize 1/M with constant prediction; requires M >= 2*L1 when L1 is
// known. One subsolver call per iteration, no admissibility tests.
Trajectory run_first_order_fixed(const SaddleProblem& prob, const MirrorMap& map,
                                 double M, const SolverConfig& config, const Vector& z0);

// Constant prediction with the non-advancing line search.
Trajectory run_first_order_ls(const SaddleProblem& prob, const MirrorMap& map,
                              const SolverConfig& config, const Vector& z0);

// Affine prediction with the advancing line search; unconstrained smooth
// problems with a Jacobian oracle.
Trajectory run_second_order(const SaddleProblem& prob, const MirrorMap& map,
                            const SolverConfig& config, const Vector& z0);

// Regularized Taylor prediction of order p-1 with the advancing line search.
Trajectory run_pth_order(const SaddleProblem& prob, const MirrorMap& map, int p,
                         double lambda, const SolverConfig& config, const Vector& z0);

// Two-prox baseline with a fixed stepsize: descend to a midpoint, then step
// from the original point using the midpoint operator value.
Trajectory run_mirror_prox(const SaddleProblem& prob, const MirrorMap& map, double eta,
                           const SolverConfig& config, const Vector& z0);

// ---------------------------------------------------------------------------
// Constants and bound curves from the convergence analysis.

double gamma2_constant(double alpha, double beta, double L_phi);
double gamma_p_constant(int p, double alpha, double beta, double L_phi);
// L_p(Phi, lambda) = L_p + p * L_phi^((p+1)/2) * lambda
double regularized_smoothness(int p, double L_p, double lambda, double L_phi);

struct TheoryConstants {
  double gamma2 = 0.0;
  std::optional<double> gamma_p;
  std::optional<double> reg_smoothness;  // L_p(Phi, lambda)
  std::optional<double> kappa_p;         // L_p * D0^((p-1)/2) / mu
  std::optional<double> kappa_tilde;     // gamma_p^(p-1) * L_p(Phi,lambda) * D0^((p-1)/2) / mu
};

// Bundle of derived constants; kappa values require mu > 0 and throw on a
// mu = 0 query.
TheoryConstants theory_constants(double alpha, double beta, double L_phi, int p,
                                 std::optional<double> lambda = std::nullopt,
                                 std::optional<double> L_p = std::nullopt,
                                 std::optional<double> mu = std::nullopt,
                                 std::optional<double> D0 = std::nullopt);

// Averaged-gap bound for the fixed-step first-order method on a box of radius
// R per coordinate started at the origin: M (m+n) R^2 / (2N).
double fixed_step_gap_bound(double M, Eigen::Index m, Eigen::Index n, double R, long N);

// Linear-rate curve dist0_sq * (M / (2*mu + M))^N; the factor 2*mu reflects
// the symmetry coefficient of the Euclidean map.
double fixed_step_linear_bound(double dist0_sq, double M, double mu, long N);

// Total subsolver calls of the non-advancing first-order search after N
// iterations: max{2N, 2N log2(4 + (2/N) log_{1/beta}(2 sigma0 L1 / alpha))}.
double first_order_calls_bound(long N, double sigma0, double alpha, double beta, double L1);

// Total subsolver calls of the advancing search after N iterations for the
// order-p method (p = 2 uses gamma2 and L2):
//   2N log2(4 + 2(p-1) log_{1/b}(1 + s0^(2/(p-1)) g_p^2 Lt^(2/(p-1)) D0 / N)
//             + 2 log_{1/b}(1 + 2 (alpha+L_phi)^2 D0 / (s0^2 (1-alpha) N eps^2)))
double higher_order_calls_bound(long N, int p, double sigma0, double alpha, double beta,
                                double L_phi, double reg_smooth, double D0, double eps);

// Iteration count needed by the order-p method (p >= 2) to reach a target
// Bregman distance eps under strong convexity: a halving phase driven by the
// condition measure chi (gamma2 * kappa2 for p = 2, the regularized condition
// number for p >= 3), then a doubly logarithmic superlinear tail once the
// accuracy passes the local threshold.
double strongly_monotone_iteration_bound(int p, double chi, double gamma_val, double mu,
                                         double reg_smooth, double alpha, double D0,
                                         double eps);

// Lyapunov diagnostic
//   V(z_k, z_km1; z_ref) = -(eta/(1+eta*mu)) <F(z_k) - P(z_k), z_k - z_ref>
//                          + D(z_ref, z_k) + alpha ||z_k - z_km1||^2 / (4 (1+eta*mu)^2),
// where P is the prediction built at z_km1 and eta the stepsize that produced
// z_k. With eta <= 0 (first iterate) the cross term vanishes.
double lyapunov_value(const MirrorMap& map, const SaddleProblem& prob, const Vector& z_k,
                      const Vector& z_km1, double eta_km1, double mu,
                      const Predictor& predictor_km1, const Vector& z_ref, double alpha);

// V_k along a recorded trajectory (k = 0 .. iterations()-1), using the stored
// correction vectors; requires keep_iterates.
std::vector<double> lyapunov_series(const Trajectory& traj, const MirrorMap& map,
                                    double mu, double alpha, const Vector& z_ref);

}  // namespace saddleopt
