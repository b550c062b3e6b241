// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "saddleopt/solvers.hpp"

namespace saddleopt::bench {

// Flat `key = value` configuration text: one pair per line, `#` starts a
// comment, no nesting. Unknown keys are rejected by the consumers.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);

// Problem names accepted on the command line and in config files.
std::string problem_name(ProblemKind kind);
ProblemKind problem_kind_from_name(const std::string& name);

// Desk-scale defaults (paper_scale switches to the full experiment sizes).
ProblemSpec default_problem_spec(ProblemKind kind, bool paper_scale);

// Serialize/restore a problem spec through the key-value format.
KeyValues problem_spec_to_kv(const ProblemSpec& spec);
ProblemSpec problem_spec_from_kv(const KeyValues& kv);

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double v);

struct SolveOptions {
  ProblemSpec problem;
  std::uint64_t seed = 1;
  Method method = Method::FirstOrderFixed;
  long iters = 1000;
  double eps = 1e-9;
  double alpha = 0.5;
  double beta = 0.5;
  double sigma0 = 1.0;
  double fixed_M = 0.0;      // <= 0: 2 * L1 when known
  double mirror_eta = 0.0;   // <= 0: 1 / (2 * L1) when known
  int p = 3;
  double reg_lambda = 0.0;   // <= 0: the problem's order-p smoothness constant
  std::string out_dir = "out";
  std::vector<std::string> overlays;  // see overlay_names()
};

struct BenchCallsOptions {
  Method method = Method::FirstOrderLS;
  std::vector<ProblemSpec> problems;
  std::vector<double> sigma0_grid{1.0, 100.0};
  std::vector<double> beta_grid{0.5, 0.9};
  int repeats = 50;
  std::uint64_t base_seed = 1;
  long iters = 0;     // 0: 1000 for first order, 500 otherwise
  double eps = 0.0;   // 0: 1e-9 for first order, 1e-10 otherwise
  double alpha = 0.5;
  std::string out_dir = "out";
};

struct CompareOptions {
  ProblemSpec problem;
  std::uint64_t seed = 1;
  std::vector<Method> methods;
  long iters = 1000;
  double eps = 1e-9;
  double alpha = 0.5;
  double beta = 0.5;
  double sigma0 = 1.0;
  std::string out_dir = "out";
  std::vector<std::string> overlays;
};

const std::vector<std::string>& overlay_names();

// Run one experiment: trajectory.csv (schema
// k,eta,eta_hat,calls,residual,gap,dist2,zeta), summary.txt, and overlay
// columns in overlays.csv when requested. Returns a process exit status:
// 0 success, 2 invalid configuration, 3 solver failure.
int cli_solve(const SolveOptions& opt);

// Stepsize-search cost table: for each (problem, sigma0, beta) cell, the
// maximum over seeded repeats of total subsolver calls per completed
// iteration. Writes bench_calls.csv and mirrors the table on stdout.
int cli_bench_calls(const BenchCallsOptions& opt);

// Aligned per-iteration metric columns for several methods on one problem,
// plus requested bound overlays, written to compare.csv.
int cli_compare(const CompareOptions& opt);

// Output directory override honored by all runners.
std::string resolve_out_dir(const std::string& requested);

}  // namespace saddleopt::bench
