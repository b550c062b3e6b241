// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
//
// Benchmark and experiment runner. Subcommands:
//   solve       run one method on one problem, write trajectory/summary/overlays
//   bench-calls sweep (sigma0, beta) grids and tabulate subsolver calls per iteration
//   compare     run several methods on one problem into one aligned CSV
#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "saddleopt/bench.hpp"

namespace {

using namespace saddleopt;

struct ProblemFlags {
  std::string name = "prob1";
  std::string config_file;
  bool paper_scale = false;
  long m = -1, n = -1;
  double lambda = -1.0, mu = -1.0, radius = -1.0, L2 = -1.0, c = -1.0, c3 = -1.0;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
  cmd->add_option("--problem", f.name, "problem name: prob1, prob2, prob2_sc, prob_p3");
  cmd->add_option("--config", f.config_file, "key = value config file (overrides flags)");
  cmd->add_flag("--paper-scale", f.paper_scale, "use the full experiment sizes");
  cmd->add_option("--m", f.m, "primal dimension override");
  cmd->add_option("--n", f.n, "dual dimension override");
  cmd->add_option("--lambda", f.lambda, "l1 weight (prob1)");
  cmd->add_option("--mu", f.mu, "strong convexity modulus");
  cmd->add_option("--radius", f.radius, "box radius (prob1)");
  cmd->add_option("--L2", f.L2, "curvature constant (prob2, prob2_sc)");
  cmd->add_option("--c", f.c, "tilt constant (prob2_sc)");
  cmd->add_option("--c3", f.c3, "quartic constant (prob_p3)");
}

ProblemSpec resolve_problem(const ProblemFlags& f) {
  if (!f.config_file.empty()) {
    return bench::problem_spec_from_kv(bench::parse_key_values_file(f.config_file));
  }
  ProblemSpec spec =
      bench::default_problem_spec(bench::problem_kind_from_name(f.name), f.paper_scale);
  if (f.m >= 0) spec.m = f.m;
  if (f.n >= 0) spec.n = f.n;
  if (f.lambda >= 0.0) spec.lambda_reg = f.lambda;
  if (f.mu >= 0.0) spec.mu = f.mu;
  if (f.radius >= 0.0) spec.radius = f.radius;
  if (f.L2 >= 0.0) spec.L2 = f.L2;
  if (f.c >= 0.0) spec.c = f.c;
  if (f.c3 >= 0.0) spec.c3 = f.c3;
  return spec;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimistic methods for composite convex-concave saddle point problems"};
  app.require_subcommand(1);

  // --- solve ---
  ProblemFlags solve_prob;
  bench::SolveOptions solve_opt;
  std::string solve_method = "first-fixed";
  std::string solve_overlays;
  CLI::App* solve = app.add_subcommand("solve", "run one experiment");
  add_problem_flags(solve, solve_prob);
  solve->add_option("--method", solve_method,
                    "first-fixed, first-ls, second-ls, pth-ls, mirror-prox");
  solve->add_option("--seed", solve_opt.seed, "random seed");
  solve->add_option("--iters", solve_opt.iters, "outer iteration budget");
  solve->add_option("--eps", solve_opt.eps, "target residual");
  solve->add_option("--alpha", solve_opt.alpha, "stepsize condition constant in (0,1]");
  solve->add_option("--beta", solve_opt.beta, "search granularity in (0,1)");
  solve->add_option("--sigma0", solve_opt.sigma0, "initial trial stepsize");
  solve->add_option("--M", solve_opt.fixed_M, "fixed-step parameter (default 2*L1)");
  solve->add_option("--eta", solve_opt.mirror_eta, "mirror-prox stepsize (default 1/(2*L1))");
  solve->add_option("--p", solve_opt.p, "Taylor order for pth-ls");
  solve->add_option("--reg-lambda", solve_opt.reg_lambda,
                    "regularization for pth-ls (default: the known smoothness constant)");
  solve->add_option("--out", solve_opt.out_dir, "output directory");
  solve->add_option("--overlays", solve_overlays,
                    "comma list: fixed-gap,linear-rate,gap-stepsum,gap-apriori,zeta-bound,zeta-sim");

  // --- bench-calls ---
  ProblemFlags bench_prob;
  bench::BenchCallsOptions bench_opt;
  std::string bench_method = "first-ls";
  std::string sigma_grid, beta_grid;
  bool bench_default_problems = true;
  CLI::App* bench_cmd = app.add_subcommand("bench-calls", "tabulate subsolver calls per iteration");
  add_problem_flags(bench_cmd, bench_prob);
  bench_cmd->add_flag("--default-problems,!--single-problem", bench_default_problems,
                      "sweep the default problem pair instead of --problem");
  bench_cmd->add_option("--method", bench_method, "first-ls or second-ls");
  bench_cmd->add_option("--repeats", bench_opt.repeats, "random instances per cell");
  bench_cmd->add_option("--seed", bench_opt.base_seed, "base seed (instance i uses seed+i)");
  bench_cmd->add_option("--iters", bench_opt.iters, "iteration budget (0: method default)");
  bench_cmd->add_option("--eps", bench_opt.eps, "target residual (0: method default)");
  bench_cmd->add_option("--alpha", bench_opt.alpha, "stepsize condition constant");
  bench_cmd->add_option("--sigma0-grid", sigma_grid, "comma list of initial stepsizes");
  bench_cmd->add_option("--beta-grid", beta_grid, "comma list of beta values");
  bench_cmd->add_option("--out", bench_opt.out_dir, "output directory");

  // --- compare ---
  ProblemFlags cmp_prob;
  bench::CompareOptions cmp_opt;
  std::string cmp_methods;
  std::string cmp_overlays;
  CLI::App* cmp = app.add_subcommand("compare", "aligned metric columns for several methods");
  add_problem_flags(cmp, cmp_prob);
  cmp->add_option("--methods", cmp_methods, "comma list of methods");
  cmp->add_option("--seed", cmp_opt.seed, "random seed");
  cmp->add_option("--iters", cmp_opt.iters, "outer iteration budget");
  cmp->add_option("--eps", cmp_opt.eps, "target residual");
  cmp->add_option("--alpha", cmp_opt.alpha, "stepsize condition constant");
  cmp->add_option("--beta", cmp_opt.beta, "search granularity");
  cmp->add_option("--sigma0", cmp_opt.sigma0, "initial trial stepsize");
  cmp->add_option("--out", cmp_opt.out_dir, "output directory");
  cmp->add_option("--overlays", cmp_overlays, "comma list of bound overlays");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      solve_opt.problem = resolve_problem(solve_prob);
      solve_opt.method = bench::method_from_name(solve_method);
      solve_opt.overlays = split_list(solve_overlays);
      return bench::cli_solve(solve_opt);
    }
    if (bench_cmd->parsed()) {
      bench_opt.method = bench::method_from_name(bench_method);
      if (!sigma_grid.empty()) {
        bench_opt.sigma0_grid.clear();
        for (const std::string& s : split_list(sigma_grid)) bench_opt.sigma0_grid.push_back(std::stod(s));
      }
      if (!beta_grid.empty()) {
        bench_opt.beta_grid.clear();
        for (const std::string& s : split_list(beta_grid)) bench_opt.beta_grid.push_back(std::stod(s));
      }
      if (!bench_default_problems || !bench_prob.config_file.empty() ||
          bench_cmd->count("--problem") > 0) {
        bench_opt.problems = {resolve_problem(bench_prob)};
      }
      return bench::cli_bench_calls(bench_opt);
    }
    if (cmp->parsed()) {
      cmp_opt.problem = resolve_problem(cmp_prob);
      for (const std::string& name : split_list(cmp_methods)) {
        cmp_opt.methods.push_back(bench::method_from_name(name));
      }
      cmp_opt.overlays = split_list(cmp_overlays);
      return bench::cli_compare(cmp_opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "saddleopt: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
