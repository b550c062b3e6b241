// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <variant>

#include "saddleopt/geometry.hpp"
#include "saddleopt/types.hpp"

namespace saddleopt {

enum class CompositeKind { None, L1 };
enum class FeasibleKind { AllSpace, Box };

// Data behind the bundled test problems, kept around so closed-form metrics
// (gaps, reference points) can reach the raw matrices.

// Bilinear coupling <Ax - b, y> with elementwise l1 terms, box constraints of
// radius R per block, and optional mu-strong convexity/concavity.
struct Prob1Data {
  Matrix A;
  Vector b;
  double lambda_reg = 0.0;
  double mu = 0.0;
  double radius = 0.0;
};

// Unconstrained cubic-primal problem (L2/6)||x||^3 + <Ax - b, y> with the
// upper-bidiagonal A; has a closed-form saddle point.
struct Prob2Data {
  Matrix A;
  Vector b;
  double L2 = 0.0;
};

// Unconstrained strongly-convex-strongly-concave problem with a cubic
// difference chain: (L2/36)(sum |x_k - x_{k+1}|^3 - 3c x_1) + (mu/2)||x||^2
// + <Ax, y> - (mu/2)||y||^2.
struct Prob2ScData {
  Matrix A;
  double L2 = 0.0;
  double c = 0.0;
  double mu = 0.0;
};

// Unconstrained quartic-primal problem (c3/24)||x||^4 + <Ax - b, y>
// + (mu/2)||x||^2 - (mu/2)||y||^2; its operator has Lipschitz third
// derivative with constant exactly c3.
struct ProbP3Data {
  Matrix A;
  Vector b;
  double c3 = 0.0;
  double mu = 0.0;
};

using ProblemStructure =
    std::variant<std::monostate, Prob1Data, Prob2Data, Prob2ScData, ProbP3Data>;

// A composite saddle point problem presented through its monotone operator
// F(z) = (grad_x f, -grad_y f), derivative oracles, and the structure of the
// nonsmooth part H (l1 weights and box constraints, coordinate-separable).
//
// Instances are immutable after construction; all oracles must be pure.
struct SaddleProblem {
  Eigen::Index m = 0;  // primal dimension
  Eigen::Index n = 0;  // dual dimension

  std::function<Vector(const Vector&)> f_oracle;   // F(z)
  std::function<Matrix(const Vector&)> jac_oracle; // DF(z), optional
  // D^order F(z)[h]^order for 2 <= order <= high_order, optional
  std::function<Vector(int, const Vector&, const Vector&)> high_oracle;
  int high_order = 1;
  // D^2 F(z)[d, .] as a matrix, optional; enables Newton-type inclusion solves
  std::function<Matrix(const Vector&, const Vector&)> d2_contraction_oracle;

  CompositeKind composite = CompositeKind::None;
  double l1_weight = 0.0;
  FeasibleKind feasible = FeasibleKind::AllSpace;
  double box_radius = 0.0;

  double mu = 0.0;       // strong-convexity modulus of f w.r.t. the mirror map
  std::optional<double> lip1;  // Lipschitz constant of F
  std::optional<double> lip2;  // Lipschitz constant of DF
  std::optional<double> lip3;  // Lipschitz constant of D^2 F

  ProblemStructure structure;

  Eigen::Index dim() const { return m + n; }

  Vector F(const Vector& z) const;
  bool has_jacobian() const { return static_cast<bool>(jac_oracle); }
  Matrix jacobian(const Vector& z) const;
  // D^order F(z)[h]^order; order 1 routes through the Jacobian oracle
  Vector directional(int order, const Vector& z, const Vector& h) const;
  bool has_second_contraction() const { return static_cast<bool>(d2_contraction_oracle); }
  Matrix second_contraction(const Vector& z, const Vector& d) const;

  bool smooth_unconstrained() const {
    return composite == CompositeKind::None && feasible == FeasibleKind::AllSpace;
  }
  bool is_feasible(const Vector& z, double tol = 1e-12) const;
  void check_dim(const Vector& z, const char* where) const;

  const Prob1Data* prob1() const { return std::get_if<Prob1Data>(&structure); }
  const Prob2Data* prob2() const { return std::get_if<Prob2Data>(&structure); }
  const Prob2ScData* prob2_sc() const { return std::get_if<Prob2ScData>(&structure); }
  const ProbP3Data* prob_p3() const { return std::get_if<ProbP3Data>(&structure); }
};

// Taylor expansion of F around z_base truncated at order q:
//   T^(q)(z; z_base) = F(z_base) + sum_{i=1..q} (1/i!) D^i F(z_base)[z - z_base]^i.
Vector eval_taylor(const SaddleProblem& prob, int q, const Vector& z_eval,
                   const Vector& z_base);

// Regularized Taylor operator of order p-1:
//   T(z) = T^(p-1)(z; z_base)
//        + (lambda/(p-1)!) (2 D_Phi(z, z_base))^((p-1)/2) (grad Phi(z) - grad Phi(z_base)).
// Monotone in z for lambda >= L_p.
Vector eval_regularized_taylor(const SaddleProblem& prob, const MirrorMap& map,
                               int p, double lambda, const Vector& z_eval,
                               const Vector& z_base);

// res(z) = min over w in H(z) of ||F(z) + w||_*. Exact for the supported
// structures: H == 0, and the coordinate-separable l1 + box case, where the
// minimization reduces to the distance of -F_i(z) to an interval per
// coordinate.
double residual(const SaddleProblem& prob, const Vector& z);

// min over u in scale*H(z) of ||value + u||_* for a precomputed vector;
// residual() is the scale = 1, value = F(z) case. Used by inclusion solvers
// whose operator carries eta*H.
double structured_inclusion_residual(const SaddleProblem& prob, const Vector& z,
                                     const Vector& value, double scale);

// Closed-form primal-dual gap for prob1 instances with mu == 0.
double primal_dual_gap_prob1(const SaddleProblem& prob, const Vector& z);

// Closed-form restricted primal-dual gap for prob2 over R^m x {||y|| <= R_dual}.
// Valid as a gap whenever R_dual >= ||y*||.
double restricted_gap_prob2(const SaddleProblem& prob, const Vector& z, double R_dual);

// The approximation function handed to the optimistic subsolver: a constant
// prediction F(z_base), the first-order Taylor model, or the regularized
// (p-1)-th-order Taylor model. Evaluation at the base point always returns
// F(z_base) exactly.
enum class PredictorKind { Constant, AffineTaylor, RegularizedTaylor };

class Predictor {
 public:
  static Predictor constant(const SaddleProblem& prob, Vector base);
  static Predictor affine_taylor(const SaddleProblem& prob, Vector base);
  static Predictor regularized_taylor(const SaddleProblem& prob, const MirrorMap& map,
                                      int p, double lambda, Vector base);

  PredictorKind kind() const { return kind_; }
  const Vector& base() const { return base_; }
  const Vector& f_at_base() const { return f_base_; }
  const Matrix& jacobian_at_base() const;
  int order() const { return p_; }
  double lambda() const { return lambda_; }
  const SaddleProblem& problem() const { return *prob_; }

  Vector operator()(const Vector& z) const;

  // Jacobian of the prediction at an arbitrary point; available for the
  // affine model and for regularized Taylor models of order <= 2 in the
  // Euclidean setup (used by the Newton path of the inclusion solver).
  bool has_pointwise_jacobian() const;
  Matrix pointwise_jacobian(const Vector& z) const;

 private:
  Predictor() = default;

  PredictorKind kind_ = PredictorKind::Constant;
  const SaddleProblem* prob_ = nullptr;
  const MirrorMap* map_ = nullptr;
  Vector base_;
  Vector f_base_;
  Matrix jac_base_;
  bool has_jac_base_ = false;
  int p_ = 1;
  double lambda_ = 0.0;
};

// Specification of a bundled test problem; the seed fixes all random data.
enum class ProblemKind { Prob1, Prob2, Prob2Sc, ProbP3 };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Prob1;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  double lambda_reg = 0.1;
  double mu = 0.0;
  double radius = 0.05;
  double L2 = 10.0;
  double c = 100.0;
  double c3 = 50.0;

  static ProblemSpec prob1(Eigen::Index m, Eigen::Index n, double lambda_reg,
                           double mu, double radius);
  static ProblemSpec prob2(Eigen::Index n, double L2);
  static ProblemSpec prob2_sc(Eigen::Index m, Eigen::Index n, double L2, double c,
                              double mu);
  static ProblemSpec prob_p3(Eigen::Index m, Eigen::Index n, double c3, double mu);
};

SaddleProblem make_test_problem(const ProblemSpec& spec, std::uint64_t seed);

// High-accuracy saddle point: closed form where available (prob2), otherwise
// a long solver run (second-order when derivatives exist, first-order with an
// active-set polish for the composite case). Throws if the target residual is
// not reached within the iteration cap.
Vector reference_saddle_point(const SaddleProblem& prob, const MirrorMap& map,
                              double tol, long max_iters = 400000);

// Central finite differences; used as a fallback Jacobian and by tests.
Matrix finite_difference_jacobian(const SaddleProblem& prob, const Vector& z,
                                  double h = 1e-5);

// Deterministic uniform draw from [-1, 1] built from the raw 64-bit stream,
// so that generated data is identical across platforms.
inline double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace saddleopt
