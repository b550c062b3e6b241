// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace saddleopt {

const Vector& Trajectory::iterate(long k) const {
  if (k == 0) return z0;
  if (k < 1 || k > iterations()) throw std::out_of_range("Trajectory::iterate");
  const Vector& z = steps[static_cast<size_t>(k - 1)].z_next;
  if (z.size() == 0) throw std::logic_error("Trajectory::iterate: iterates were not kept");
  return z;
}

Vector Trajectory::averaged() const {
  if (!(eta_sum > 0.0)) throw std::logic_error("Trajectory::averaged: no steps recorded");
  return weighted_sum / eta_sum;
}

double Trajectory::final_residual() const {
  return steps.empty() ? initial_residual : steps.back().residual_next;
}

double eta_hat_rule(double eta_prev, double mu) {
  if (!(eta_prev > 0.0)) throw std::invalid_argument("eta_hat_rule: eta_prev must be positive");
  if (mu < 0.0) throw std::invalid_argument("eta_hat_rule: mu must be >= 0");
  return eta_prev / (1.0 + mu * eta_prev);
}

std::vector<double> zeta_sequence(const Trajectory& traj) {
  std::vector<double> z;
  z.reserve(traj.steps.size() + 1);
  z.push_back(1.0);
  double cur = 1.0;
  for (const StepRecord& s : traj.steps) {
    cur /= 1.0 + s.eta * traj.mu;
    z.push_back(cur);
  }
  return z;
}

std::vector<double> simulated_zeta(double C, long N) {
  if (!(C > 0.0)) throw std::invalid_argument("simulated_zeta: C must be positive");
  std::vector<double> z;
  z.reserve(static_cast<size_t>(N) + 1);
  z.push_back(1.0);
  double inv_sum = 1.0;
  for (long k = 1; k <= N; ++k) {
    const double inv = 1.0 + std::pow(inv_sum, 1.5) / C;
    z.push_back(1.0 / inv);
    inv_sum += inv;
  }
  return z;
}

namespace {

StepStatus to_step_status(LineSearchStatus s) {
  switch (s) {
    case LineSearchStatus::BetaOptimal:
      return StepStatus::BetaOptimal;
    case LineSearchStatus::AcceptedInitial:
      return StepStatus::AcceptedInitial;
    case LineSearchStatus::EarlyExitEpsilon:
      return StepStatus::EarlyExitEpsilon;
  }
  return StepStatus::FixedStep;
}

}  // namespace

Trajectory run_gom(const SaddleProblem& prob, const MirrorMap& map,
                   const std::function<Predictor(const Vector&)>& predictor_factory,
                   const SolverConfig& config, const Vector& z0, bool with_advancing,
                   double fixed_eta) {
  prob.check_dim(z0, "run_gom");
  if (map.dim() != prob.dim()) throw std::invalid_argument("run_gom: map/problem dimension mismatch");
  if (!prob.is_feasible(z0)) throw std::invalid_argument("run_gom: infeasible start point");
  if (fixed_eta <= 0.0) config.ls.validate();
  if (config.max_iters < 0) throw std::invalid_argument("run_gom: max_iters must be >= 0");
  if (prob.mu > 0.0 && config.mu == 0.0) {
    std::fprintf(stderr,
                 "saddleopt: warning: problem modulus is %g but the correction rule runs "
                 "with mu = 0\n",
                 prob.mu);
  }

  Trajectory traj;
  traj.z0 = z0;
  traj.final_point = z0;
  traj.mu = config.mu;
  traj.weighted_sum = Vector::Zero(prob.dim());
  traj.initial_residual = residual(prob, z0);
  if (traj.initial_residual <= config.target_residual) {
    traj.reached_target = true;
    return traj;
  }

  const double inner_tol = config.resolved_inner_tol();
  Predictor pred_prev = Predictor::constant(prob, z0);
  Vector z_curr = z0;
  double eta_prev = fixed_eta;
  double sigma = config.ls.sigma;
  double zeta = 1.0;

  for (long k = 0; k < config.max_iters; ++k) {
    const double eta_hat =
        (eta_prev > 0.0) ? eta_hat_rule(eta_prev, config.mu) : 0.0;
    Predictor pred = predictor_factory(z_curr);
    Vector v;
    if (eta_hat > 0.0) {
      v = eta_hat * (pred.f_at_base() - pred_prev(z_curr));
    } else {
      v = Vector::Zero(prob.dim());
    }

    std::function<SubsolverResult(double)> sub;
    switch (pred.kind()) {
      case PredictorKind::Constant:
        sub = [&](double e) {
          return solve_first_order(SubsolverRequest{e, pred, v, z_curr, map, prob});
        };
        break;
      case PredictorKind::AffineTaylor:
        sub = [&](double e) {
          return solve_affine_inclusion(SubsolverRequest{e, pred, v, z_curr, map, prob});
        };
        break;
      case PredictorKind::RegularizedTaylor:
        sub = [&](double e) {
          // no warm start across trials: every solve starts from the base
          // point, so recorded steps re-verify bit for bit
          return solve_regularized_taylor_inclusion(
              SubsolverRequest{e, pred, v, z_curr, map, prob}, inner_tol,
              config.inner_cap);
        };
        break;
    }

    StepRecord rec;
    rec.k = k;
    Vector z_next;
    std::optional<double> res_known;

    if (fixed_eta > 0.0) {
      SubsolverResult r = sub(fixed_eta);
      rec.eta = fixed_eta;
      rec.calls = 1;
      rec.inner_iterations = r.inner_iterations;
      rec.status = StepStatus::FixedStep;
      rec.inclusion_residual = r.inclusion_residual;
      rec.max_inclusion_residual = r.inclusion_residual;
      z_next = std::move(r.z);
    } else {
      SearchContext ctx;
      ctx.subsolve = sub;
      ctx.operator_value = [&prob](const Vector& z) { return prob.F(z); };
      ctx.prediction = [&pred](const Vector& z) { return pred(z); };
      ctx.residual_value = [&prob](const Vector& z) { return residual(prob, z); };
      ctx.z_minus = z_curr;
      ctx.alpha = config.ls.alpha;

      LineSearchConfig cfg = config.ls;
      cfg.sigma = sigma;
      cfg.with_advancing = with_advancing;
      // a non-positive target means "run the full budget"; the advancing exit
      // then never fires
      cfg.epsilon = std::max(config.target_residual, std::numeric_limits<double>::min());
      LineSearchOutcome out = line_search(ctx, cfg);

      rec.eta = out.eta;
      rec.sigma = sigma;
      rec.calls = out.calls;
      rec.inner_iterations = out.inner_iterations;
      rec.status = to_step_status(out.status);
      rec.eta_up = out.status == LineSearchStatus::BetaOptimal ? out.eta_up : 0.0;
      rec.inclusion_residual = out.inclusion_residual;
      rec.max_inclusion_residual = out.max_inclusion_residual;
      res_known = out.residual_at_accept;
      z_next = std::move(out.z_next);
      sigma = out.eta / config.ls.beta;
    }

    rec.eta_hat = eta_hat;
    zeta /= 1.0 + rec.eta * config.mu;
    rec.zeta_next = zeta;
    traj.weighted_sum += rec.eta * z_next;
    traj.eta_sum += rec.eta;
    rec.residual_next = res_known ? *res_known : residual(prob, z_next);
    if (config.gap_oracle) rec.gap = config.gap_oracle(traj.weighted_sum / traj.eta_sum);
    if (config.reference_point) {
      rec.dist2 = (z_next - *config.reference_point).squaredNorm();
    }
    if (config.keep_iterates) {
      rec.z_next = z_next;
      rec.v = v;
    }
    traj.total_calls += rec.calls;
    traj.total_inner += rec.inner_iterations;

    const bool done = rec.status == StepStatus::EarlyExitEpsilon ||
                      rec.residual_next <= config.target_residual;
    traj.steps.push_back(std::move(rec));
    pred_prev = std::move(pred);
    eta_prev = traj.steps.back().eta;
    z_curr = std::move(z_next);
    traj.final_point = z_curr;
    if (done) {
      traj.reached_target = true;
      break;
    }
  }
  return traj;
}

Trajectory run_first_order_fixed(const SaddleProblem& prob, const MirrorMap& map,
                                 double M, const SolverConfig& config, const Vector& z0) {
  if (!(M > 0.0)) throw std::invalid_argument("run_first_order_fixed: M must be positive");
  if (prob.lip1) {
    if (M < 2.0 * *prob.lip1 * (1.0 - 1e-12)) {
      throw std::invalid_argument("run_first_order_fixed: M must be at least twice the operator's Lipschitz constant");
    }
  } else {
    std::fprintf(stderr,
                 "saddleopt: warning: fixed-step method without a known Lipschitz constant\n");
  }
  auto factory = [&prob](const Vector& z) { return Predictor::constant(prob, z); };
  return run_gom(prob, map, factory, config, z0, /*with_advancing=*/false,
                 /*fixed_eta=*/1.0 / M);
}

Trajectory run_first_order_ls(const SaddleProblem& prob, const MirrorMap& map,
                              const SolverConfig& config, const Vector& z0) {
  auto factory = [&prob](const Vector& z) { return Predictor::constant(prob, z); };
  return run_gom(prob, map, factory, config, z0, /*with_advancing=*/false);
}

Trajectory run_second_order(const SaddleProblem& prob, const MirrorMap& map,
                            const SolverConfig& config, const Vector& z0) {
  if (!prob.has_jacobian()) {
    throw std::invalid_argument("run_second_order: problem has no Jacobian oracle");
  }
  if (!prob.smooth_unconstrained()) {
    throw std::invalid_argument("run_second_order: affine subsolver needs an unconstrained smooth problem");
  }
  auto factory = [&prob](const Vector& z) { return Predictor::affine_taylor(prob, z); };
  return run_gom(prob, map, factory, config, z0, /*with_advancing=*/true);
}

Trajectory run_pth_order(const SaddleProblem& prob, const MirrorMap& map, int p,
                         double lambda, const SolverConfig& config, const Vector& z0) {
  if (p < 2) throw std::invalid_argument("run_pth_order: p must be >= 2");
  if (lambda < 0.0) throw std::invalid_argument("run_pth_order: lambda must be >= 0");
  if (p >= 3 && prob.lip3 && lambda < *prob.lip3 * (1.0 - 1e-12)) {
    std::fprintf(stderr,
                 "saddleopt: warning: regularization %g below the smoothness constant %g; "
                 "the Taylor model may lose monotonicity\n",
                 lambda, *prob.lip3);
  }
  auto factory = [&prob, &map, p, lambda](const Vector& z) {
    return Predictor::regularized_taylor(prob, map, p, lambda, z);
  };
  return run_gom(prob, map, factory, config, z0, /*with_advancing=*/true);
}

Trajectory run_mirror_prox(const SaddleProblem& prob, const MirrorMap& map, double eta,
                           const SolverConfig& config, const Vector& z0) {
  if (!(eta > 0.0)) throw std::invalid_argument("run_mirror_prox: eta must be positive");
  if (!map.is_euclidean()) {
    throw std::invalid_argument("run_mirror_prox: only the Euclidean prox path is shipped");
  }
  prob.check_dim(z0, "run_mirror_prox");
  if (!prob.is_feasible(z0)) throw std::invalid_argument("run_mirror_prox: infeasible start point");

  Trajectory traj;
  traj.z0 = z0;
  traj.final_point = z0;
  traj.mu = config.mu;
  traj.weighted_sum = Vector::Zero(prob.dim());
  traj.initial_residual = residual(prob, z0);
  if (traj.initial_residual <= config.target_residual) {
    traj.reached_target = true;
    return traj;
  }

  const double t = prob.composite == CompositeKind::L1 ? eta * prob.l1_weight : 0.0;
  const double R = prob.feasible == FeasibleKind::Box
                       ? prob.box_radius
                       : std::numeric_limits<double>::infinity();
  auto prox = [&](const Vector& target) {
    Vector z(target.size());
    for (Eigen::Index i = 0; i < target.size(); ++i) z[i] = prox_l1_box(target[i], t, R);
    return z;
  };

  Vector z_curr = z0;
  double zeta = 1.0;
  for (long k = 0; k < config.max_iters; ++k) {
    const Vector z_half = prox(z_curr - eta * prob.F(z_curr));
    Vector z_next = prox(z_curr - eta * prob.F(z_half));

    StepRecord rec;
    rec.k = k;
    rec.eta = eta;
    rec.eta_hat = 0.0;
    rec.calls = 2;
    rec.status = StepStatus::FixedStep;
    zeta /= 1.0 + eta * config.mu;
    rec.zeta_next = zeta;
    traj.weighted_sum += eta * z_next;
    traj.eta_sum += eta;
    rec.residual_next = residual(prob, z_next);
    if (config.gap_oracle) rec.gap = config.gap_oracle(traj.weighted_sum / traj.eta_sum);
    if (config.reference_point) {
      rec.dist2 = (z_next - *config.reference_point).squaredNorm();
    }
    if (config.keep_iterates) {
      rec.z_next = z_next;
      rec.v = Vector::Zero(prob.dim());
    }
    traj.total_calls += 2;
    const bool done = rec.residual_next <= config.target_residual;
    traj.steps.push_back(std::move(rec));
    z_curr = std::move(z_next);
    traj.final_point = z_curr;
    if (done) {
      traj.reached_target = true;
      break;
    }
  }
  return traj;
}

// ---------------------------------------------------------------------------

double gamma2_constant(double alpha, double beta, double L_phi) {
  return std::sqrt(2.0 / (1.0 - alpha)) *
         (std::pow(L_phi, 1.5) / (alpha * beta * beta) +
          (beta + std::sqrt(L_phi)) / (2.0 * beta * beta));
}

double gamma_p_constant(int p, double alpha, double beta, double L_phi) {
  if (p < 2) throw std::invalid_argument("gamma_p_constant: p must be >= 2");
  double fact = 1.0;
  for (int i = 2; i <= p; ++i) fact *= i;
  const double base = std::pow(2.0 / (fact * alpha * std::pow(beta, p)), 1.0 / (p - 1));
  return std::sqrt(2.0 / (1.0 - alpha)) * std::pow(L_phi, 1.5) * base +
         base * alpha * (beta + std::sqrt(L_phi)) / std::sqrt(2.0 * (1.0 - alpha));
}

double regularized_smoothness(int p, double L_p, double lambda, double L_phi) {
  if (p < 2) throw std::invalid_argument("regularized_smoothness: p must be >= 2");
  return L_p + p * std::pow(L_phi, 0.5 * (p + 1)) * lambda;
}

TheoryConstants theory_constants(double alpha, double beta, double L_phi, int p,
                                 std::optional<double> lambda, std::optional<double> L_p,
                                 std::optional<double> mu, std::optional<double> D0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("theory_constants: alpha in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("theory_constants: beta in (0,1)");
  TheoryConstants out;
  out.gamma2 = gamma2_constant(alpha, beta, L_phi);
  if (p >= 2) out.gamma_p = gamma_p_constant(p, alpha, beta, L_phi);
  if (L_p && lambda) out.reg_smoothness = regularized_smoothness(p, *L_p, *lambda, L_phi);
  if (mu) {
    if (*mu <= 0.0) {
      throw std::invalid_argument("theory_constants: condition numbers are undefined for mu = 0");
    }
    if (L_p && D0) {
      out.kappa_p = *L_p * std::pow(*D0, 0.5 * (p - 1)) / *mu;
      if (out.reg_smoothness && out.gamma_p) {
        out.kappa_tilde = std::pow(*out.gamma_p, p - 1) * *out.reg_smoothness *
                          std::pow(*D0, 0.5 * (p - 1)) / *mu;
      }
    }
  }
  return out;
}

double fixed_step_gap_bound(double M, Eigen::Index m, Eigen::Index n, double R, long N) {
  if (N < 1) throw std::invalid_argument("fixed_step_gap_bound: N must be >= 1");
  return M * static_cast<double>(m + n) * R * R / (2.0 * static_cast<double>(N));
}

double fixed_step_linear_bound(double dist0_sq, double M, double mu, long N) {
  return dist0_sq * std::pow(M / (2.0 * mu + M), static_cast<double>(N));
}

double first_order_calls_bound(long N, double sigma0, double alpha, double beta, double L1) {
  if (N < 1) throw std::invalid_argument("first_order_calls_bound: N must be >= 1");
  const double dn = static_cast<double>(N);
  const double log_inv_beta = -std::log(beta);
  const double inner = 4.0 + 2.0 / dn * std::log(2.0 * sigma0 * L1 / alpha) / log_inv_beta;
  return std::max(2.0 * dn, 2.0 * dn * std::log2(inner));
}

double higher_order_calls_bound(long N, int p, double sigma0, double alpha, double beta,
                                double L_phi, double reg_smooth, double D0, double eps) {
  if (N < 1) throw std::invalid_argument("higher_order_calls_bound: N must be >= 1");
  const double dn = static_cast<double>(N);
  const double log_inv_beta = -std::log(beta);
  const double gp = p == 2 ? gamma2_constant(alpha, beta, L_phi)
                           : gamma_p_constant(p, alpha, beta, L_phi);
  const double e = 2.0 / (p - 1);
  const double term_lo =
      std::log1p(std::pow(sigma0, e) * gp * gp * std::pow(reg_smooth, e) * D0 / dn) /
      log_inv_beta;
  const double term_up =
      std::log1p(2.0 * std::pow(alpha + L_phi, 2) * D0 /
                 (sigma0 * sigma0 * (1.0 - alpha) * dn * eps * eps)) /
      log_inv_beta;
  return 2.0 * dn * std::log2(4.0 + 2.0 * (p - 1) * term_lo + 2.0 * term_up);
}

double strongly_monotone_iteration_bound(int p, double chi, double gamma_val, double mu,
                                         double reg_smooth, double alpha, double D0,
                                         double eps) {
  if (p < 2) throw std::invalid_argument("strongly_monotone_iteration_bound: p must be >= 2");
  if (!(mu > 0.0)) throw std::invalid_argument("strongly_monotone_iteration_bound: mu must be > 0");
  const double q = double(p - 1) / double(p + 1);
  const double halving = 1.0 / (1.0 - std::pow(2.0, -q));
  const double global_reach = std::pow(chi, 2.0 / (p + 1));
  // threshold below which the superlinear tail takes over
  const double local_eps = std::pow(mu / reg_smooth, 2.0 / (p - 1)) /
                           ((2.0 - alpha) * gamma_val * gamma_val);
  if (eps >= local_eps) {
    return std::max(halving * global_reach +
                        std::log2(2.0 * D0 / ((2.0 - alpha) * eps)) + 1.0,
                    1.0);
  }
  const double to_local = std::max(
      halving * global_reach + 2.0 / (p - 1) * std::log2(chi) + 2.0, 1.0);
  const double tail =
      std::log(std::log2(2.0 * local_eps / eps)) / std::log(0.5 * (p + 1)) + 1.0;
  return to_local + tail;
}

double lyapunov_value(const MirrorMap& map, const SaddleProblem& prob, const Vector& z_k,
                      const Vector& z_km1, double eta_km1, double mu,
                      const Predictor& predictor_km1, const Vector& z_ref, double alpha) {
  double value = bregman_distance(map, z_ref, z_k);
  const double denom = eta_km1 > 0.0 ? 1.0 + eta_km1 * mu : 1.0;
  if (eta_km1 > 0.0) {
    const Vector err = prob.F(z_k) - predictor_km1(z_k);
    value -= eta_km1 / denom * err.dot(z_k - z_ref);
  }
  value += alpha * (z_k - z_km1).squaredNorm() / (4.0 * denom * denom);
  return value;
}

std::vector<double> lyapunov_series(const Trajectory& traj, const MirrorMap& map,
                                    double mu, double alpha, const Vector& z_ref) {
  std::vector<double> out;
  const long n = traj.iterations();
  out.reserve(static_cast<size_t>(n) + 1);
  out.push_back(bregman_distance(map, z_ref, traj.z0));
  for (long k = 1; k < n; ++k) {
    const StepRecord& rec = traj.steps[static_cast<size_t>(k)];
    if (rec.v.size() == 0) {
      throw std::logic_error("lyapunov_series: correction vectors were not kept");
    }
    const double eta_km1 = traj.steps[static_cast<size_t>(k - 1)].eta;
    const double denom = 1.0 + eta_km1 * mu;
    const Vector& z_k = traj.iterate(k);
    double v_val = bregman_distance(map, z_ref, z_k) - rec.v.dot(z_k - z_ref);
    v_val += alpha * (z_k - traj.iterate(k - 1)).squaredNorm() / (4.0 * denom * denom);
    out.push_back(v_val);
  }
  return out;
}

}  // namespace saddleopt
