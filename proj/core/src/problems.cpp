// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/problems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <memory>

namespace saddleopt {

namespace {

double pos(double v) { return v > 0.0 ? v : 0.0; }

// Compensated accumulation for oracles whose terms are many orders of
// magnitude above the residuals being measured. Error-free transforms via
// fma; good to ~1e-30 relative on the running sum.
struct Accum {
  double hi = 0.0;
  double lo = 0.0;

  void add(double v) {
    const double s = hi + v;
    const double bp = s - hi;
    lo += (hi - (s - bp)) + (v - bp);
    hi = s;
  }
  void add_prod(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    add(p);
    lo += e;
  }
  double value() const { return hi + lo; }
};

// Interval of H_i(z) = lambda * d|z_i| + N_[-R,R](z_i) per coordinate; lo/hi
// may be +-inf at an active box face.
void coordinate_interval(double zi, double lambda, double radius, bool box,
                         double& lo, double& hi) {
  lo = 0.0;
  hi = 0.0;
  if (lambda > 0.0) {
    if (zi > 0.0) {
      lo = hi = lambda;
    } else if (zi < 0.0) {
      lo = hi = -lambda;
    } else {
      lo = -lambda;
      hi = lambda;
    }
  }
  if (box) {
    const double inf = std::numeric_limits<double>::infinity();
    if (zi >= radius) {
      hi = inf;
    } else if (zi <= -radius) {
      lo = -inf;
    }
  }
}

}  // namespace

Vector SaddleProblem::F(const Vector& z) const {
  check_dim(z, "SaddleProblem::F");
  return f_oracle(z);
}

Matrix SaddleProblem::jacobian(const Vector& z) const {
  check_dim(z, "SaddleProblem::jacobian");
  if (!jac_oracle) throw std::invalid_argument("SaddleProblem: no Jacobian oracle");
  return jac_oracle(z);
}

Vector SaddleProblem::directional(int order, const Vector& z, const Vector& h) const {
  check_dim(z, "SaddleProblem::directional");
  check_dim(h, "SaddleProblem::directional");
  if (order < 1) throw std::invalid_argument("SaddleProblem::directional: order must be >= 1");
  if (order == 1) return jacobian(z) * h;
  if (order > high_order || !high_oracle) {
    throw std::invalid_argument("SaddleProblem: derivative oracle missing for requested order");
  }
  return high_oracle(order, z, h);
}

Matrix SaddleProblem::second_contraction(const Vector& z, const Vector& d) const {
  if (!d2_contraction_oracle) {
    throw std::invalid_argument("SaddleProblem: no second-derivative contraction oracle");
  }
  return d2_contraction_oracle(z, d);
}

bool SaddleProblem::is_feasible(const Vector& z, double tol) const {
  if (z.size() != dim()) return false;
  if (feasible == FeasibleKind::AllSpace) return true;
  return z.lpNorm<Eigen::Infinity>() <= box_radius * (1.0 + tol) + tol;
}

void SaddleProblem::check_dim(const Vector& z, const char* where) const {
  if (z.size() != dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

Vector eval_taylor(const SaddleProblem& prob, int q, const Vector& z_eval,
                   const Vector& z_base) {
  if (q < 0) throw std::invalid_argument("eval_taylor: order must be >= 0");
  Vector out = prob.F(z_base);
  if (q == 0) return out;
  const Vector d = z_eval - z_base;
  double factorial = 1.0;
  for (int i = 1; i <= q; ++i) {
    factorial *= i;
    out += prob.directional(i, z_base, d) / factorial;
  }
  return out;
}

Vector eval_regularized_taylor(const SaddleProblem& prob, const MirrorMap& map,
                               int p, double lambda, const Vector& z_eval,
                               const Vector& z_base) {
  if (p < 2) throw std::invalid_argument("eval_regularized_taylor: p must be >= 2");
  if (lambda < 0.0) throw std::invalid_argument("eval_regularized_taylor: lambda must be >= 0");
  Vector out = eval_taylor(prob, p - 1, z_eval, z_base);
  if (lambda > 0.0) {
    double fact = 1.0;
    for (int i = 2; i <= p - 1; ++i) fact *= i;
    const double dist2 = 2.0 * bregman_distance(map, z_eval, z_base);
    const double weight = lambda / fact * std::pow(dist2, 0.5 * (p - 1));
    out += weight * (map.grad(z_eval) - map.grad(z_base));
  }
  return out;
}

double structured_inclusion_residual(const SaddleProblem& prob, const Vector& z,
                                     const Vector& value, double scale) {
  prob.check_dim(z, "structured_inclusion_residual");
  prob.check_dim(value, "structured_inclusion_residual");
  if (!(scale > 0.0)) throw std::invalid_argument("structured_inclusion_residual: scale must be > 0");
  if (prob.smooth_unconstrained()) return value.norm();
  if (!prob.is_feasible(z)) {
    throw std::invalid_argument("structured_inclusion_residual: point not feasible");
  }

  const bool box = prob.feasible == FeasibleKind::Box;
  const double lambda =
      (prob.composite == CompositeKind::L1 ? prob.l1_weight : 0.0) * scale;
  double sq = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    double lo, hi;
    coordinate_interval(z[i], lambda, prob.box_radius, box, lo, hi);
    const double target = -value[i];
    double r = 0.0;
    if (target < lo) {
      r = value[i] + lo;
    } else if (target > hi) {
      r = value[i] + hi;
    }
    sq += r * r;
  }
  return std::sqrt(sq);
}

double residual(const SaddleProblem& prob, const Vector& z) {
  return structured_inclusion_residual(prob, z, prob.F(z), 1.0);
}

double primal_dual_gap_prob1(const SaddleProblem& prob, const Vector& z) {
  const Prob1Data* d = prob.prob1();
  if (d == nullptr) throw std::invalid_argument("primal_dual_gap_prob1: wrong problem instance");
  if (d->mu != 0.0) {
    throw std::invalid_argument("primal_dual_gap_prob1: closed form requires mu == 0");
  }
  prob.check_dim(z, "primal_dual_gap_prob1");
  const auto x = z.head(prob.m);
  const auto y = z.tail(prob.n);
  const Vector rx = d->A * x - d->b;
  const Vector ry = d->A.transpose() * y;
  double gap = d->lambda_reg * (x.lpNorm<1>() + y.lpNorm<1>()) + d->b.dot(y);
  for (Eigen::Index j = 0; j < rx.size(); ++j) gap += d->radius * pos(std::abs(rx[j]) - d->lambda_reg);
  for (Eigen::Index i = 0; i < ry.size(); ++i) gap += d->radius * pos(std::abs(ry[i]) - d->lambda_reg);
  return gap;
}

double restricted_gap_prob2(const SaddleProblem& prob, const Vector& z, double R_dual) {
  const Prob2Data* d = prob.prob2();
  if (d == nullptr) throw std::invalid_argument("restricted_gap_prob2: wrong problem instance");
  if (d->L2 <= 0.0) throw std::invalid_argument("restricted_gap_prob2: requires L2 > 0");
  prob.check_dim(z, "restricted_gap_prob2");
  const auto x = z.head(prob.m);
  const auto y = z.tail(prob.n);
  const double xn = x.norm();
  return d->L2 / 6.0 * xn * xn * xn + R_dual * (d->A * x - d->b).norm() +
         2.0 / 3.0 * std::sqrt(2.0 / d->L2) * std::pow((d->A.transpose() * y).norm(), 1.5) +
         d->b.dot(y);
}

// ---------------------------------------------------------------------------
// Predictor

Predictor Predictor::constant(const SaddleProblem& prob, Vector base) {
  Predictor p;
  p.kind_ = PredictorKind::Constant;
  p.prob_ = &prob;
  p.f_base_ = prob.F(base);
  p.base_ = std::move(base);
  return p;
}

Predictor Predictor::affine_taylor(const SaddleProblem& prob, Vector base) {
  Predictor p;
  p.kind_ = PredictorKind::AffineTaylor;
  p.prob_ = &prob;
  p.f_base_ = prob.F(base);
  p.jac_base_ = prob.jacobian(base);
  p.has_jac_base_ = true;
  p.base_ = std::move(base);
  return p;
}

Predictor Predictor::regularized_taylor(const SaddleProblem& prob, const MirrorMap& map,
                                        int p_order, double lambda, Vector base) {
  if (p_order < 2) throw std::invalid_argument("Predictor: regularized Taylor needs p >= 2");
  if (lambda < 0.0) throw std::invalid_argument("Predictor: lambda must be >= 0");
  Predictor p;
  p.kind_ = PredictorKind::RegularizedTaylor;
  p.prob_ = &prob;
  p.map_ = &map;
  p.p_ = p_order;
  p.lambda_ = lambda;
  p.f_base_ = prob.F(base);
  p.jac_base_ = prob.jacobian(base);
  p.has_jac_base_ = true;
  p.base_ = std::move(base);
  return p;
}

const Matrix& Predictor::jacobian_at_base() const {
  if (!has_jac_base_) throw std::invalid_argument("Predictor: no cached Jacobian");
  return jac_base_;
}

Vector Predictor::operator()(const Vector& z) const {
  switch (kind_) {
    case PredictorKind::Constant:
      return f_base_;
    case PredictorKind::AffineTaylor:
      return f_base_ + jac_base_ * (z - base_);
    case PredictorKind::RegularizedTaylor: {
      const Vector d = z - base_;
      Vector out = f_base_ + jac_base_ * d;
      double factorial = 1.0;
      for (int i = 2; i <= p_ - 1; ++i) {
        factorial *= i;
        out += prob_->directional(i, base_, d) / factorial;
      }
      if (lambda_ > 0.0) {
        double fact = 1.0;
        for (int i = 2; i <= p_ - 1; ++i) fact *= i;
        const double dist2 = 2.0 * bregman_distance(*map_, z, base_);
        out += lambda_ / fact * std::pow(dist2, 0.5 * (p_ - 1)) *
               (map_->grad(z) - map_->grad(base_));
      }
      return out;
    }
  }
  throw std::logic_error("Predictor: unknown kind");
}

bool Predictor::has_pointwise_jacobian() const {
  if (kind_ == PredictorKind::AffineTaylor) return true;
  if (kind_ != PredictorKind::RegularizedTaylor) return false;
  if (!map_->is_euclidean()) return false;
  if (p_ == 2) return true;
  return p_ == 3 && prob_->has_second_contraction();
}

Matrix Predictor::pointwise_jacobian(const Vector& z) const {
  if (kind_ == PredictorKind::AffineTaylor) return jac_base_;
  if (!has_pointwise_jacobian()) {
    throw std::invalid_argument("Predictor: pointwise Jacobian unavailable");
  }
  const Vector d = z - base_;
  Matrix J = jac_base_;
  if (p_ == 3) J += prob_->second_contraction(base_, d);
  if (lambda_ > 0.0) {
    double fact = 1.0;
    for (int i = 2; i <= p_ - 1; ++i) fact *= i;
    const double dn = d.norm();
    const Eigen::Index dd = z.size();
    if (p_ == 2) {
      // d(||d|| d)/dd = ||d|| I + d d^T/||d||
      if (dn > 0.0) {
        J += lambda_ / fact * (dn * Matrix::Identity(dd, dd) + d * d.transpose() / dn);
      }
    } else {
      J += lambda_ / fact *
           (dn * dn * Matrix::Identity(dd, dd) + 2.0 * d * d.transpose());
    }
  }
  return J;
}

// ---------------------------------------------------------------------------
// Test problems

ProblemSpec ProblemSpec::prob1(Eigen::Index m, Eigen::Index n, double lambda_reg,
                               double mu, double radius) {
  ProblemSpec s;
  s.kind = ProblemKind::Prob1;
  s.m = m;
  s.n = n;
  s.lambda_reg = lambda_reg;
  s.mu = mu;
  s.radius = radius;
  return s;
}

ProblemSpec ProblemSpec::prob2(Eigen::Index n, double L2) {
  ProblemSpec s;
  s.kind = ProblemKind::Prob2;
  s.m = n;
  s.n = n;
  s.L2 = L2;
  return s;
}

ProblemSpec ProblemSpec::prob2_sc(Eigen::Index m, Eigen::Index n, double L2, double c,
                                  double mu) {
  ProblemSpec s;
  s.kind = ProblemKind::Prob2Sc;
  s.m = m;
  s.n = n;
  s.L2 = L2;
  s.c = c;
  s.mu = mu;
  return s;
}

ProblemSpec ProblemSpec::prob_p3(Eigen::Index m, Eigen::Index n, double c3, double mu) {
  ProblemSpec s;
  s.kind = ProblemKind::ProbP3;
  s.m = m;
  s.n = n;
  s.c3 = c3;
  s.mu = mu;
  return s;
}

namespace {

Matrix random_pm1_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Matrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = uniform_pm1(rng);
  }
  return A;
}

Vector random_pm1_vector(Eigen::Index size, std::mt19937_64& rng) {
  Vector b(size);
  for (Eigen::Index i = 0; i < size; ++i) b[i] = uniform_pm1(rng);
  return b;
}

double spectral_norm(const Matrix& A) {
  Eigen::BDCSVD<Matrix> svd(A);
  return svd.singularValues()[0];
}

SaddleProblem make_prob1(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto data = std::make_shared<Prob1Data>();
  data->A = random_pm1_matrix(spec.n, spec.m, rng);
  data->b = random_pm1_vector(spec.n, rng);
  data->lambda_reg = spec.lambda_reg;
  data->mu = spec.mu;
  data->radius = spec.radius;

  SaddleProblem p;
  p.m = spec.m;
  p.n = spec.n;
  const Eigen::Index m = spec.m;
  p.f_oracle = [data, m](const Vector& z) {
    const auto x = z.head(m);
    const auto y = z.tail(z.size() - m);
    Vector out(z.size());
    out.head(m) = data->A.transpose() * y + data->mu * x;
    out.tail(z.size() - m) = data->b - data->A * x + data->mu * y;
    return out;
  };
  p.jac_oracle = [data, m](const Vector& z) {
    const Eigen::Index n = z.size() - m;
    Matrix J = Matrix::Zero(z.size(), z.size());
    J.topLeftCorner(m, m) = data->mu * Matrix::Identity(m, m);
    J.topRightCorner(m, n) = data->A.transpose();
    J.bottomLeftCorner(n, m) = -data->A;
    J.bottomRightCorner(n, n) = data->mu * Matrix::Identity(n, n);
    return J;
  };
  p.high_oracle = [](int, const Vector& z, const Vector&) { return Vector::Zero(z.size()).eval(); };
  p.high_order = 3;
  p.composite = spec.lambda_reg > 0.0 ? CompositeKind::L1 : CompositeKind::None;
  p.l1_weight = spec.lambda_reg;
  p.feasible = FeasibleKind::Box;
  p.box_radius = spec.radius;
  p.mu = spec.mu;
  p.lip1 = std::sqrt(spec.mu * spec.mu + std::pow(spectral_norm(data->A), 2));
  p.lip2 = 0.0;
  p.lip3 = 0.0;
  p.structure = *data;
  return p;
}

SaddleProblem make_prob2(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto data = std::make_shared<Prob2Data>();
  const Eigen::Index n = spec.n;
  data->A = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    data->A(i, i) = 1.0;
    if (i + 1 < n) data->A(i, i + 1) = -1.0;
  }
  data->b = random_pm1_vector(n, rng);
  data->L2 = spec.L2;

  SaddleProblem p;
  p.m = n;
  p.n = n;
  p.f_oracle = [data, n](const Vector& z) {
    const auto x = z.head(n);
    const auto y = z.tail(n);
    Vector out(2 * n);
    out.head(n) = 0.5 * data->L2 * x.norm() * x + data->A.transpose() * y;
    out.tail(n) = data->b - data->A * x;
    return out;
  };
  p.jac_oracle = [data, n](const Vector& z) {
    const auto x = z.head(n);
    Matrix J = Matrix::Zero(2 * n, 2 * n);
    const double xn = x.norm();
    if (xn > 0.0) {
      J.topLeftCorner(n, n) =
          0.5 * data->L2 * (xn * Matrix::Identity(n, n) + x * x.transpose() / xn);
    }
    J.topRightCorner(n, n) = data->A.transpose();
    J.bottomLeftCorner(n, n) = -data->A;
    return J;
  };
  p.high_oracle = [data, n](int order, const Vector& z, const Vector& h) {
    Vector out = Vector::Zero(2 * n);
    if (order != 2) return out;
    const auto x = z.head(n);
    const auto hx = h.head(n);
    const double xn = x.norm();
    if (xn == 0.0) {
      out.head(n) = data->L2 * hx.norm() * hx;
      return out;
    }
    const double xh = x.dot(hx) / xn;
    out.head(n) =
        0.5 * data->L2 * ((hx.squaredNorm() - xh * xh) / xn * x + 2.0 * xh * hx);
    return out;
  };
  p.high_order = 2;
  p.mu = 0.0;
  p.lip2 = spec.L2;
  p.structure = *data;
  return p;
}

SaddleProblem make_prob2_sc(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto data = std::make_shared<Prob2ScData>();
  data->A = random_pm1_matrix(spec.n, spec.m, rng);
  data->L2 = spec.L2;
  data->c = spec.c;
  data->mu = spec.mu;

  SaddleProblem p;
  p.m = spec.m;
  p.n = spec.n;
  const Eigen::Index m = spec.m;
  // The cubic chain terms reach ~L2*c^2 while the residuals of interest sit
  // near 1e-10, so the operator is accumulated with compensated arithmetic;
  // a plain evaluation would bury the solution under cancellation noise.
  p.f_oracle = [data, m](const Vector& z) {
    const Eigen::Index n = z.size() - m;
    const auto x = z.head(m);
    const auto y = z.tail(n);
    const double scale = data->L2 / 12.0;
    Vector out(z.size());
    for (Eigen::Index k = 0; k < m; ++k) {
      Accum acc;
      if (k + 1 < m) {
        const double s = x[k] - x[k + 1];
        acc.add_prod(scale * s, std::abs(s));
      }
      if (k > 0) {
        const double s = x[k - 1] - x[k];
        acc.add_prod(-scale * s, std::abs(s));
      }
      if (k == 0) acc.add(-data->L2 * data->c / 12.0);
      acc.add_prod(data->mu, x[k]);
      for (Eigen::Index j = 0; j < n; ++j) acc.add_prod(data->A(j, k), y[j]);
      out[k] = acc.value();
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      Accum acc;
      acc.add_prod(data->mu, y[j]);
      for (Eigen::Index k = 0; k < m; ++k) acc.add_prod(-data->A(j, k), x[k]);
      out[m + j] = acc.value();
    }
    return out;
  };
  p.jac_oracle = [data, m](const Vector& z) {
    const Eigen::Index n = z.size() - m;
    const auto x = z.head(m);
    Matrix J = Matrix::Zero(z.size(), z.size());
    Matrix H = Matrix::Zero(m, m);
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      const double w = 6.0 * std::abs(x[j] - x[j + 1]);
      H(j, j) += w;
      H(j + 1, j + 1) += w;
      H(j, j + 1) -= w;
      H(j + 1, j) -= w;
    }
    J.topLeftCorner(m, m) = data->L2 / 36.0 * H + data->mu * Matrix::Identity(m, m);
    J.topRightCorner(m, n) = data->A.transpose();
    J.bottomLeftCorner(n, m) = -data->A;
    J.bottomRightCorner(n, n) = data->mu * Matrix::Identity(n, n);
    return J;
  };
  p.high_oracle = [data, m](int order, const Vector& z, const Vector& h) {
    Vector out = Vector::Zero(z.size());
    if (order != 2) return out;
    const auto x = z.head(m);
    const auto hx = h.head(m);
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      const double s = x[j] - x[j + 1];
      const double dh = hx[j] - hx[j + 1];
      const double t = data->L2 / 6.0 * (s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0)) * dh * dh;
      out[j] += t;
      out[j + 1] -= t;
    }
    return out;
  };
  p.high_order = 2;
  p.mu = spec.mu;
  p.lip2 = spec.L2;
  p.structure = *data;
  return p;
}

SaddleProblem make_prob_p3(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto data = std::make_shared<ProbP3Data>();
  data->A = random_pm1_matrix(spec.n, spec.m, rng);
  data->b = random_pm1_vector(spec.n, rng);
  data->c3 = spec.c3;
  data->mu = spec.mu;

  SaddleProblem p;
  p.m = spec.m;
  p.n = spec.n;
  const Eigen::Index m = spec.m;
  p.f_oracle = [data, m](const Vector& z) {
    const Eigen::Index n = z.size() - m;
    const auto x = z.head(m);
    const auto y = z.tail(n);
    Vector out(z.size());
    out.head(m) =
        data->c3 / 6.0 * x.squaredNorm() * x + data->mu * x + data->A.transpose() * y;
    out.tail(n) = data->b - data->A * x + data->mu * y;
    return out;
  };
  p.jac_oracle = [data, m](const Vector& z) {
    const Eigen::Index n = z.size() - m;
    const auto x = z.head(m);
    Matrix J = Matrix::Zero(z.size(), z.size());
    J.topLeftCorner(m, m) =
        data->c3 / 6.0 * (x.squaredNorm() * Matrix::Identity(m, m) + 2.0 * x * x.transpose()) +
        data->mu * Matrix::Identity(m, m);
    J.topRightCorner(m, n) = data->A.transpose();
    J.bottomLeftCorner(n, m) = -data->A;
    J.bottomRightCorner(n, n) = data->mu * Matrix::Identity(n, n);
    return J;
  };
  p.high_oracle = [data, m](int order, const Vector& z, const Vector& h) {
    Vector out = Vector::Zero(z.size());
    const auto x = z.head(m);
    const auto hx = h.head(m);
    if (order == 2) {
      out.head(m) = data->c3 / 6.0 * (4.0 * x.dot(hx) * hx + 2.0 * hx.squaredNorm() * x);
    } else if (order == 3) {
      out.head(m) = data->c3 * hx.squaredNorm() * hx;
    }
    return out;
  };
  p.high_order = 3;
  p.d2_contraction_oracle = [data, m](const Vector& z, const Vector& d) {
    const auto x = z.head(m);
    const auto dx = d.head(m);
    Matrix M = Matrix::Zero(z.size(), z.size());
    M.topLeftCorner(m, m) =
        data->c3 / 3.0 *
        (x * dx.transpose() + dx * x.transpose() + x.dot(dx) * Matrix::Identity(m, m));
    return M;
  };
  p.mu = spec.mu;
  p.lip3 = spec.c3;
  p.structure = *data;
  return p;
}

}  // namespace

SaddleProblem make_test_problem(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.m <= 0 || spec.n <= 0) {
    throw std::invalid_argument("make_test_problem: dimensions must be positive");
  }
  if (spec.mu < 0.0) throw std::invalid_argument("make_test_problem: mu must be >= 0");
  switch (spec.kind) {
    case ProblemKind::Prob1:
      return make_prob1(spec, seed);
    case ProblemKind::Prob2:
      return make_prob2(spec, seed);
    case ProblemKind::Prob2Sc:
      return make_prob2_sc(spec, seed);
    case ProblemKind::ProbP3:
      return make_prob_p3(spec, seed);
  }
  throw std::logic_error("make_test_problem: unknown kind");
}

Matrix finite_difference_jacobian(const SaddleProblem& prob, const Vector& z, double h) {
  const Eigen::Index d = prob.dim();
  Matrix J(d, d);
  Vector zp = z, zm = z;
  for (Eigen::Index j = 0; j < d; ++j) {
    zp[j] = z[j] + h;
    zm[j] = z[j] - h;
    J.col(j) = (prob.F(zp) - prob.F(zm)) / (2.0 * h);
    zp[j] = z[j];
    zm[j] = z[j];
  }
  return J;
}

}  // namespace saddleopt
