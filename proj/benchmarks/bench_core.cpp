// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include <benchmark/benchmark.h>

#include "saddleopt/solvers.hpp"

using namespace saddleopt;

static void BM_BregmanDistance(benchmark::State& state) {
  const MirrorMap map = MirrorMap::euclidean(state.range(0));
  Vector a = Vector::Random(state.range(0));
  Vector b = Vector::Random(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bregman_distance(map, a, b));
  }
}
BENCHMARK(BM_BregmanDistance)->Arg(64)->Arg(1024);

static void BM_OperatorEval(benchmark::State& state) {
  const SaddleProblem prob =
      make_test_problem(ProblemSpec::prob1(state.range(0), state.range(0) / 2, 0.1, 0.0, 0.05), 1);
  const Vector z = Vector::Zero(prob.dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(prob.F(z));
  }
}
BENCHMARK(BM_OperatorEval)->Arg(60)->Arg(600);

static void BM_FirstOrderProx(benchmark::State& state) {
  const SaddleProblem prob =
      make_test_problem(ProblemSpec::prob1(state.range(0), state.range(0) / 2, 0.1, 0.0, 0.05), 1);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  const Vector z = Vector::Zero(prob.dim());
  const Vector v = Vector::Zero(prob.dim());
  const Predictor pred = Predictor::constant(prob, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_first_order(SubsolverRequest{0.05, pred, v, z, map, prob}));
  }
}
BENCHMARK(BM_FirstOrderProx)->Arg(60)->Arg(600);

static void BM_AffineSubsolve(benchmark::State& state) {
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob2(state.range(0), 10.0), 1);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  Vector z = Vector::Constant(prob.dim(), 0.3);
  const Vector v = Vector::Zero(prob.dim());
  const Predictor pred = Predictor::affine_taylor(prob, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_affine_inclusion(SubsolverRequest{0.5, pred, v, z, map, prob}));
  }
}
BENCHMARK(BM_AffineSubsolve)->Arg(50)->Arg(200);

static void BM_FirstOrderIteration(benchmark::State& state) {
  const SaddleProblem prob = make_test_problem(ProblemSpec::prob1(60, 30, 0.1, 0.0, 0.05), 1);
  const MirrorMap map = MirrorMap::euclidean(prob.dim());
  SolverConfig cfg;
  cfg.max_iters = 1;
  cfg.keep_iterates = false;
  cfg.target_residual = 1e-16;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_first_order_ls(prob, map, cfg, Vector::Zero(prob.dim())));
  }
}
BENCHMARK(BM_FirstOrderIteration);

BENCHMARK_MAIN();
