// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "saddleopt/subsolvers.hpp"

using namespace saddleopt;

namespace {

Vector random_vec(Eigen::Index d, std::mt19937_64& rng, double scale = 1.0) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = scale * uniform_pm1(rng);
  return v;
}

// scan of the 1-D prox objective g*w + t*|w| + 0.5*(w - base)^2 over [-R, R]
double scan_prox(double g, double t, double R, double base, double step = 1e-4) {
  double best_w = -R;
  double best = std::numeric_limits<double>::infinity();
  for (double w = -R; w <= R + 0.5 * step; w += step) {
    const double val = g * w + t * std::abs(w) + 0.5 * (w - base) * (w - base);
    if (val < best) {
      best = val;
      best_w = w;
    }
  }
  return best_w;
}

}  // namespace

TEST_SUITE_BEGIN("subsolvers");

TEST_CASE("scalar prox branches") {
  CHECK(prox_l1_box(0.0, 0.3, 1.0) == 0.0);
  CHECK(prox_l1_box(0.05, 0.1, 0.05) == 0.0);
  CHECK(prox_l1_box(0.12, 0.1, 0.05) == doctest::Approx(0.02));
  CHECK(prox_l1_box(-0.2, 0.1, 0.05) == -0.05);
  CHECK(prox_l1_box(0.2, 0.1, 0.05) == 0.05);
  // no box: plain soft threshold
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(prox_l1_box(5.0, 1.0, inf) == doctest::Approx(4.0));
  // no l1 term: clamp
  CHECK(prox_l1_box(0.2, 0.0, 0.05) == 0.05);
  CHECK_THROWS_AS(prox_l1_box(1.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_l1_box(1.0, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("first-order subsolver: stationary input returns the base point") {
  SaddleProblem prob = make_test_problem(ProblemSpec::prob2(4, 10.0), 3);
  prob.composite = CompositeKind::None;
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  // x* solves F = 0 for a synthetic constant-zero operator
  SaddleProblem zero = prob;
  zero.f_oracle = [](const Vector& z) { return Vector::Zero(z.size()).eval(); };
  const Vector z0 = Vector::Constant(8, 0.7);
  const Predictor pred = Predictor::constant(zero, z0);
  const Vector v = Vector::Zero(8);
  const SubsolverResult r = solve_first_order(SubsolverRequest{0.3, pred, v, z0, map, zero});
  CHECK((r.z - z0).norm() == 0.0);
  CHECK(r.inner_iterations == 0);
}

TEST_CASE("first-order subsolver: explicit unconstrained step") {
  SaddleProblem prob;
  prob.m = 3;
  prob.n = 2;
  prob.f_oracle = [](const Vector& z) { return Vector::Ones(z.size()).eval(); };
  const MirrorMap map = MirrorMap::euclidean(5);
  const Vector z0 = Vector::Zero(5);
  const Predictor pred = Predictor::constant(prob, z0);
  const Vector v = Vector::Zero(5);
  const SubsolverResult r = solve_first_order(SubsolverRequest{0.1, pred, v, z0, map, prob});
  CHECK((r.z - (z0 - 0.1 * Vector::Ones(5))).norm() <= 1e-15);
}

TEST_CASE("first-order subsolver satisfies the coordinatewise optimality condition") {
  std::mt19937_64 rng(10);
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob1(4, 3, 0.1, 0.0, 0.05), 5);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  for (int t = 0; t < 100; ++t) {
    const Vector z0 = random_vec(prob.dim(), rng, prob.box_radius);
    const Predictor pred = Predictor::constant(prob, z0);
    const Vector v = random_vec(prob.dim(), rng, 0.01);
    const double eta = 0.05 + 0.3 * std::abs(uniform_pm1(rng));
    const SubsolverResult r = solve_first_order(SubsolverRequest{eta, pred, v, z0, map, prob});
    const Vector g = eta * prob.F(z0) + v;
    for (Eigen::Index i = 0; i < prob.dim(); ++i) {
      // -(g_i + z_i - z0_i) must lie in eta*lambda*d|z_i| + N_[-R,R](z_i)
      const double target = -(g[i] + r.z[i] - z0[i]);
      const double lam = eta * prob.l1_weight;
      double lo, hi;
      if (r.z[i] > 0.0) {
        lo = hi = lam;
      } else if (r.z[i] < 0.0) {
        lo = hi = -lam;
      } else {
        lo = -lam;
        hi = lam;
      }
      if (r.z[i] >= prob.box_radius) hi = std::numeric_limits<double>::infinity();
      if (r.z[i] <= -prob.box_radius) lo = -std::numeric_limits<double>::infinity();
      CHECK(target >= lo - 1e-12);
      CHECK(target <= hi + 1e-12);
    }
  }
}

TEST_CASE("first-order subsolver matches the scanned prox on 2-D instances") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    const SaddleProblem prob =
        make_test_problem(ProblemSpec::prob1(1, 1, 0.1, 0.0, 0.05), 100 + t);
    const MirrorMap map = MirrorMap::euclidean(2);
    const Vector z0 = random_vec(2, rng, 0.05);
    const Predictor pred = Predictor::constant(prob, z0);
    const Vector v = random_vec(2, rng, 0.01);
    const double eta = 0.05 + 0.25 * std::abs(uniform_pm1(rng));
    const SubsolverResult r = solve_first_order(SubsolverRequest{eta, pred, v, z0, map, prob});
    const Vector g = eta * prob.F(z0) + v;
    for (int i = 0; i < 2; ++i) {
      const double w = scan_prox(g[i], eta * prob.l1_weight, prob.box_radius, z0[i]);
      CHECK(std::abs(w - r.z[i]) <= 2e-4);
    }
  }
}

TEST_CASE("affine subsolver reduces to the explicit step for a zero jacobian") {
  SaddleProblem prob;
  prob.m = 2;
  prob.n = 2;
  prob.f_oracle = [](const Vector& z) {
    Vector f(z.size());
    f << 1.0, -2.0, 0.5, 0.0;
    return f;
  };
  prob.jac_oracle = [](const Vector& z) { return Matrix::Zero(z.size(), z.size()).eval(); };
  const MirrorMap map = MirrorMap::euclidean(4);
  const Vector z0 = Vector::Zero(4);
  const Predictor pred = Predictor::affine_taylor(prob, z0);
  const Vector v = Vector::Zero(4);
  const SubsolverResult r = solve_affine_inclusion(SubsolverRequest{0.2, pred, v, z0, map, prob});
  CHECK((r.z - (z0 - 0.2 * prob.F(z0))).norm() <= 1e-14);

  // eta -> 0 keeps the base point
  const SubsolverResult r2 =
      solve_affine_inclusion(SubsolverRequest{1e-300, pred, v, z0, map, prob});
  CHECK((r2.z - z0).norm() <= 1e-300);
}

TEST_CASE("affine subsolver on the hand-solved rotation instance") {
  SaddleProblem prob;
  prob.m = 1;
  prob.n = 1;
  prob.f_oracle = [](const Vector& z) {
    Vector f(2);
    f << 1.0 + z[1], -z[0];
    return f;
  };
  prob.jac_oracle = [](const Vector&) {
    Matrix J(2, 2);
    J << 0.0, 1.0, -1.0, 0.0;
    return J;
  };
  const MirrorMap map = MirrorMap::euclidean(2);
  const Vector z0 = Vector::Zero(2);  // F(z0) = (1, 0)
  const Predictor pred = Predictor::affine_taylor(prob, z0);
  const Vector v = Vector::Zero(2);
  const SubsolverResult r = solve_affine_inclusion(SubsolverRequest{1.0, pred, v, z0, map, prob});
  Vector expect(2);
  expect << -0.5, -0.5;  // Gaussian elimination on [[1,1],[-1,1]] d = -(1,0)
  CHECK((r.z - (z0 + expect)).norm() <= 1e-14);
}

TEST_CASE("affine subsolver back-substitution residual stays at rounding level") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const SaddleProblem prob = make_test_problem(ProblemSpec::prob2(6, 10.0), 200 + t);
    const MirrorMap map = MirrorMap::euclidean(prob.dim());
    const Vector z0 = random_vec(prob.dim(), rng);
    const Predictor pred = Predictor::affine_taylor(prob, z0);
    const Vector v = random_vec(prob.dim(), rng, 0.1);
    const double eta = std::pow(10.0, -1.0 + 2.0 * uniform_pm1(rng));
    const SubsolverResult r = solve_affine_inclusion(SubsolverRequest{eta, pred, v, z0, map, prob});
    const Matrix M = Matrix::Identity(prob.dim(), prob.dim()) + eta * prob.jacobian(z0);
    const Vector rhs = -(eta * prob.F(z0) + v);
    const double scale = std::max(1.0, rhs.norm());
    CHECK((M * (r.z - z0) - rhs).norm() <= 1e-10 * scale);
    CHECK(r.inclusion_residual <= 1e-10 * scale);
  }
}

TEST_CASE("affine subsolver rejects hopeless conditioning") {
  SaddleProblem prob;
  prob.m = 1;
  prob.n = 1;
  prob.f_oracle = [](const Vector&) { return Vector::Ones(2).eval(); };
  // jacobian -I makes I + eta*J singular at eta = 1
  prob.jac_oracle = [](const Vector&) { return (-Matrix::Identity(2, 2)).eval(); };
  const MirrorMap map = MirrorMap::euclidean(2);
  const Vector z0 = Vector::Zero(2);
  const Predictor pred = Predictor::affine_taylor(prob, z0);
  const Vector v = Vector::Zero(2);
  CHECK_THROWS_AS(solve_affine_inclusion(SubsolverRequest{1.0, pred, v, z0, map, prob}),
                  IllConditionedError);
}

TEST_CASE("regularized inclusion: a stationary base point is returned unchanged") {
  SaddleProblem prob = make_test_problem(ProblemSpec::prob_p3(4, 2, 50.0, 1.0), 9);
  SaddleProblem zero = prob;
  zero.f_oracle = [](const Vector& z) { return Vector::Zero(z.size()).eval(); };
  zero.jac_oracle = [](const Vector& z) { return Matrix::Zero(z.size(), z.size()).eval(); };
  zero.high_oracle = [](int, const Vector& z, const Vector&) {
    return Vector::Zero(z.size()).eval();
  };
  zero.d2_contraction_oracle = [](const Vector& z, const Vector&) {
    return Matrix::Zero(z.size(), z.size()).eval();
  };
  const MirrorMap map = MirrorMap::euclidean(6);
  const Vector z0 = Vector::Constant(6, 0.4);
  const Predictor pred = Predictor::regularized_taylor(zero, map, 3, 50.0, z0);
  const Vector v = Vector::Zero(6);
  const SubsolverResult r = solve_regularized_taylor_inclusion(
      SubsolverRequest{2.0, pred, v, z0, map, zero}, 1e-12, 1000);
  CHECK((r.z - z0).norm() == 0.0);
  CHECK(r.inner_iterations == 0);
}

TEST_CASE("regularized inclusion with p = 2 and no regularization matches the affine solve") {
  std::mt19937_64 rng(5);
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob2(5, 10.0), 11);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  for (int t = 0; t < 20; ++t) {
    const Vector z0 = random_vec(prob.dim(), rng);
    const Vector v = random_vec(prob.dim(), rng, 0.1);
    const double eta = 0.2 + std::abs(uniform_pm1(rng));
    const Predictor affine = Predictor::affine_taylor(prob, z0);
    const Predictor reg = Predictor::regularized_taylor(prob, map, 2, 0.0, z0);
    const SubsolverResult a =
        solve_affine_inclusion(SubsolverRequest{eta, affine, v, z0, map, prob});
    const SubsolverResult b = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, reg, v, z0, map, prob}, 1e-11, 10000);
    CHECK((a.z - b.z).norm() <= 1e-11 + 1e-10);
  }
}

TEST_CASE("regularized inclusion residual re-evaluates below the tolerance") {
  std::mt19937_64 rng(31);
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob_p3(5, 3, 50.0, 1.0), 13);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  const double lambda = *prob.lip3;
  for (int t = 0; t < 20; ++t) {
    const Vector z0 = random_vec(prob.dim(), rng);
    const Vector v = random_vec(prob.dim(), rng, 0.1);
    const double eta = std::pow(10.0, 2.0 * uniform_pm1(rng));
    const Predictor pred = Predictor::regularized_taylor(prob, map, 3, lambda, z0);
    const SubsolverResult r = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, pred, v, z0, map, prob}, 1e-10, 10000);
    const Vector g = eta * pred(r.z) + v + (r.z - z0);
    CHECK(g.norm() <= 1e-10);
    CHECK(r.inclusion_residual <= 1e-10);
  }
}

TEST_CASE("regularized inclusion: iterative fallback agrees with the Newton path") {
  std::mt19937_64 rng(17);
  const SaddleProblem with_newton = make_test_problem(ProblemSpec::prob_p3(4, 2, 50.0, 1.0), 15);
  SaddleProblem fallback = with_newton;
  fallback.d2_contraction_oracle = nullptr;  // forces the optimistic inner loop
  const MirrorMap map = MirrorMap::euclidean(6);
  for (int t = 0; t < 10; ++t) {
    const Vector z0 = random_vec(6, rng, 0.5);
    const Vector v = random_vec(6, rng, 0.05);
    const double eta = 0.5;
    const Predictor pn = Predictor::regularized_taylor(with_newton, map, 3, 50.0, z0);
    const Predictor pf = Predictor::regularized_taylor(fallback, map, 3, 50.0, z0);
    const SubsolverResult a = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, pn, v, z0, map, with_newton}, 1e-11, 10000);
    const SubsolverResult b = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, pf, v, z0, map, fallback}, 1e-11, 200000);
    CHECK((a.z - b.z).norm() <= 1e-9);
    CHECK(b.inner_iterations > 0);
  }
}

TEST_CASE("inclusion solutions vary continuously in the stepsize") {
  std::mt19937_64 rng(23);
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob_p3(4, 2, 50.0, 1.0), 19);
  const MirrorMap map = MirrorMap::euclidean(6);
  const Vector z0 = random_vec(6, rng, 0.5);
  const Vector v = random_vec(6, rng, 0.05);
  const Predictor pred = Predictor::regularized_taylor(prob, map, 3, 50.0, z0);
  for (const double eta : {1e-2, 1e-1, 1.0, 10.0}) {
    const SubsolverResult a = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, pred, v, z0, map, prob}, 1e-12, 10000);
    const SubsolverResult b = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta * (1.0 + 1e-6), pred, v, z0, map, prob}, 1e-12, 10000);
    CHECK((a.z - b.z).norm() <= 1e-4 * (1.0 + (a.z - z0).norm()));
  }
}

TEST_CASE("regularized inclusion handles composite structure through the prox") {
  std::mt19937_64 rng(29);
  SaddleProblem prob = make_test_problem(ProblemSpec::prob_p3(4, 2, 50.0, 1.0), 25);
  prob.composite = CompositeKind::L1;
  prob.l1_weight = 0.05;
  prob.feasible = FeasibleKind::Box;
  prob.box_radius = 0.8;
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  for (int t = 0; t < 5; ++t) {
    const Vector z0 = random_vec(prob.dim(), rng, 0.5);
    const Vector v = random_vec(prob.dim(), rng, 0.05);
    const double eta = 0.4;
    const Predictor pred = Predictor::regularized_taylor(prob, map, 3, 50.0, z0);
    const SubsolverResult r = solve_regularized_taylor_inclusion(
        SubsolverRequest{eta, pred, v, z0, map, prob}, 1e-9, 200000);
    CHECK(prob.is_feasible(r.z));
    const Vector g = eta * pred(r.z) + v + (r.z - z0);
    CHECK(structured_inclusion_residual(prob, r.z, g, eta) <= 1e-9);
    CHECK(r.inner_iterations > 0);
  }
}

TEST_CASE("regularized inclusion cap error carries through") {
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob_p3(4, 2, 50.0, 1.0), 21);
  const MirrorMap map = MirrorMap::euclidean(6);
  const Vector z0 = Vector::Constant(6, 0.4);
  const Vector v = Vector::Zero(6);
  const Predictor pred = Predictor::regularized_taylor(prob, map, 3, 50.0, z0);
  CHECK_THROWS_AS(solve_regularized_taylor_inclusion(
                      SubsolverRequest{1.0, pred, v, z0, map, prob}, 1e-12, 1),
                  InnerSolveError);
}

TEST_SUITE_END();
