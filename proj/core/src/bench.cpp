// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <memory>
#include <thread>

namespace saddleopt::bench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + v);
  }
}

long to_long(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + v);
  }
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

KeyValues parse_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_key_values(in);
}

std::string problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Prob1: return "prob1";
    case ProblemKind::Prob2: return "prob2";
    case ProblemKind::Prob2Sc: return "prob2_sc";
    case ProblemKind::ProbP3: return "prob_p3";
  }
  throw std::logic_error("problem_name: unknown kind");
}

ProblemKind problem_kind_from_name(const std::string& name) {
  if (name == "prob1") return ProblemKind::Prob1;
  if (name == "prob2") return ProblemKind::Prob2;
  if (name == "prob2_sc") return ProblemKind::Prob2Sc;
  if (name == "prob_p3") return ProblemKind::ProbP3;
  throw ConfigError("unknown problem: " + name);
}

ProblemSpec default_problem_spec(ProblemKind kind, bool paper_scale) {
  switch (kind) {
    case ProblemKind::Prob1:
      return paper_scale ? ProblemSpec::prob1(600, 300, 0.1, 0.0, 0.05)
                         : ProblemSpec::prob1(60, 30, 0.1, 0.0, 0.05);
    case ProblemKind::Prob2:
      return paper_scale ? ProblemSpec::prob2(200, 10.0) : ProblemSpec::prob2(50, 10.0);
    case ProblemKind::Prob2Sc:
      return paper_scale ? ProblemSpec::prob2_sc(400, 200, 1e4, 100.0, 1.0)
                         : ProblemSpec::prob2_sc(40, 20, 1e4, 100.0, 1.0);
    case ProblemKind::ProbP3:
      return paper_scale ? ProblemSpec::prob_p3(100, 50, 50.0, 1.0)
                         : ProblemSpec::prob_p3(30, 15, 50.0, 1.0);
  }
  throw std::logic_error("default_problem_spec: unknown kind");
}

KeyValues problem_spec_to_kv(const ProblemSpec& spec) {
  KeyValues kv;
  kv["problem"] = problem_name(spec.kind);
  kv["m"] = std::to_string(spec.m);
  kv["n"] = std::to_string(spec.n);
  switch (spec.kind) {
    case ProblemKind::Prob1:
      kv["lambda"] = format_double(spec.lambda_reg);
      kv["mu"] = format_double(spec.mu);
      kv["radius"] = format_double(spec.radius);
      break;
    case ProblemKind::Prob2:
      kv["L2"] = format_double(spec.L2);
      break;
    case ProblemKind::Prob2Sc:
      kv["L2"] = format_double(spec.L2);
      kv["c"] = format_double(spec.c);
      kv["mu"] = format_double(spec.mu);
      break;
    case ProblemKind::ProbP3:
      kv["c3"] = format_double(spec.c3);
      kv["mu"] = format_double(spec.mu);
      break;
  }
  return kv;
}

ProblemSpec problem_spec_from_kv(const KeyValues& kv) {
  const auto it = kv.find("problem");
  if (it == kv.end()) throw ConfigError("config is missing 'problem'");
  ProblemSpec spec = default_problem_spec(problem_kind_from_name(it->second), false);
  for (const auto& [key, value] : kv) {
    if (key == "problem") continue;
    if (key == "m") spec.m = to_long(value, key);
    else if (key == "n") spec.n = to_long(value, key);
    else if (key == "lambda") spec.lambda_reg = to_double(value, key);
    else if (key == "mu") spec.mu = to_double(value, key);
    else if (key == "radius") spec.radius = to_double(value, key);
    else if (key == "L2") spec.L2 = to_double(value, key);
    else if (key == "c") spec.c = to_double(value, key);
    else if (key == "c3") spec.c3 = to_double(value, key);
    else throw ConfigError("unknown problem key: " + key);
  }
  return spec;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::FirstOrderFixed: return "first-fixed";
    case Method::FirstOrderLS: return "first-ls";
    case Method::SecondOrderLS: return "second-ls";
    case Method::PthOrderLS: return "pth-ls";
    case Method::MirrorProx: return "mirror-prox";
  }
  throw std::logic_error("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "first-fixed") return Method::FirstOrderFixed;
  if (name == "first-ls") return Method::FirstOrderLS;
  if (name == "second-ls") return Method::SecondOrderLS;
  if (name == "pth-ls") return Method::PthOrderLS;
  if (name == "mirror-prox") return Method::MirrorProx;
  throw ConfigError("unknown method: " + name);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::vector<std::string>& overlay_names() {
  static const std::vector<std::string> names{
      "fixed-gap", "linear-rate", "gap-stepsum", "gap-apriori", "zeta-bound", "zeta-sim"};
  return names;
}

std::string resolve_out_dir(const std::string& requested) {
  if (const char* env = std::getenv("SADDLEOPT_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return requested;
}

namespace {

struct PreparedRun {
  std::shared_ptr<const SaddleProblem> prob;  // shared so metric closures stay valid
  MirrorMap map = MirrorMap::euclidean(1);
  std::optional<Vector> reference;
  std::function<double(const Vector&)> gap_oracle;  // empty when no closed form
  double r_dual = 0.0;
  double M = 0.0;
  double mirror_eta = 0.0;
  double reg_lambda = 0.0;
};

// Wire the problem instance, metric oracles, and per-method parameters.
PreparedRun prepare(const ProblemSpec& spec, std::uint64_t seed, Method method,
                    double fixed_M, double mirror_eta, double reg_lambda,
                    bool want_reference) {
  PreparedRun r;
  r.prob = std::make_shared<const SaddleProblem>(make_test_problem(spec, seed));
  r.map = MirrorMap::euclidean(r.prob->dim());

  if (spec.kind == ProblemKind::Prob2) {
    r.reference = reference_saddle_point(*r.prob, r.map, 1e-8);
    const double ystar = r.reference->tail(r.prob->n).norm();
    r.r_dual = std::max(1.0, 2.0 * ystar);
    const auto prob = r.prob;
    const double rd = r.r_dual;
    r.gap_oracle = [prob, rd](const Vector& z) { return restricted_gap_prob2(*prob, z, rd); };
  } else if (spec.kind == ProblemKind::Prob1 && spec.mu == 0.0) {
    const auto prob = r.prob;
    r.gap_oracle = [prob](const Vector& z) { return primal_dual_gap_prob1(*prob, z); };
  }
  if (!r.reference && want_reference && r.prob->mu > 0.0) {
    r.reference = reference_saddle_point(*r.prob, r.map, 1e-12);
  }

  if (method == Method::FirstOrderFixed) {
    r.M = fixed_M > 0.0 ? fixed_M : (r.prob->lip1 ? 2.0 * *r.prob->lip1 : 0.0);
    if (!(r.M > 0.0)) throw ConfigError("fixed stepsize method needs M (no known Lipschitz constant)");
  }
  if (method == Method::MirrorProx) {
    r.mirror_eta = mirror_eta > 0.0 ? mirror_eta : (r.prob->lip1 ? 0.5 / *r.prob->lip1 : 0.0);
    if (!(r.mirror_eta > 0.0)) throw ConfigError("mirror-prox needs a stepsize (no known Lipschitz constant)");
  }
  if (method == Method::PthOrderLS) {
    r.reg_lambda = reg_lambda > 0.0 ? reg_lambda : (r.prob->lip3 ? *r.prob->lip3 : 0.0);
  }
  return r;
}

Trajectory execute(const PreparedRun& r, Method method, const SolverConfig& cfg, int p) {
  const Vector z0 = Vector::Zero(r.prob->dim());
  switch (method) {
    case Method::FirstOrderFixed:
      return run_first_order_fixed(*r.prob, r.map, r.M, cfg, z0);
    case Method::FirstOrderLS:
      return run_first_order_ls(*r.prob, r.map, cfg, z0);
    case Method::SecondOrderLS:
      return run_second_order(*r.prob, r.map, cfg, z0);
    case Method::PthOrderLS:
      return run_pth_order(*r.prob, r.map, p, r.reg_lambda, cfg, z0);
    case Method::MirrorProx:
      return run_mirror_prox(*r.prob, r.map, r.mirror_eta, cfg, z0);
  }
  throw std::logic_error("execute: unknown method");
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "k,eta,eta_hat,calls,residual,gap,dist2,zeta\n";
  for (const StepRecord& s : traj.steps) {
    out << s.k << ',' << format_double(s.eta) << ',' << format_double(s.eta_hat) << ','
        << s.calls << ',' << format_double(s.residual_next) << ',';
    if (s.gap) out << format_double(*s.gap);
    out << ',';
    if (s.dist2) out << format_double(*s.dist2);
    out << ',' << format_double(s.zeta_next) << '\n';
  }
}

// Per-iteration bound curves. Each overlay pairs with an empirical column:
// gap bounds with `gap`, distance bounds with `dist2`.
struct OverlayColumns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

OverlayColumns build_overlays(const std::vector<std::string>& wanted,
                              const PreparedRun& r, const ProblemSpec& spec,
                              Method method, const SolverConfig& cfg,
                              const Trajectory& traj, int p) {
  OverlayColumns out;
  const long N = traj.iterations();
  for (const std::string& name : wanted) {
    std::vector<double> col(static_cast<size_t>(N));
    if (name == "fixed-gap") {
      if (spec.kind != ProblemKind::Prob1 || method != Method::FirstOrderFixed) {
        throw ConfigError("overlay 'fixed-gap' needs prob1 with the fixed-step method");
      }
      for (long k = 0; k < N; ++k) {
        col[static_cast<size_t>(k)] = fixed_step_gap_bound(r.M, spec.m, spec.n, spec.radius, k + 1);
      }
    } else if (name == "linear-rate") {
      if (!r.reference || method != Method::FirstOrderFixed) {
        throw ConfigError("overlay 'linear-rate' needs a reference point and the fixed-step method");
      }
      const double d0 = (traj.z0 - *r.reference).squaredNorm();
      for (long k = 0; k < N; ++k) {
        col[static_cast<size_t>(k)] = fixed_step_linear_bound(d0, r.M, r.prob->mu, k + 1);
      }
    } else if (name == "gap-stepsum" || name == "gap-apriori") {
      const Prob2Data* d2 = r.prob->prob2();
      if (d2 == nullptr || !r.reference) throw ConfigError("overlay '" + name + "' needs prob2");
      const double D0 = 0.5 * (*r.reference - traj.z0).squaredNorm();
      const double g2 = gamma2_constant(cfg.ls.alpha, cfg.ls.beta, r.map.smoothness());
      Vector wsum = Vector::Zero(r.prob->dim());
      double esum = 0.0;
      for (long k = 0; k < N; ++k) {
        const StepRecord& s = traj.steps[static_cast<size_t>(k)];
        if (s.z_next.size() == 0) throw ConfigError("overlay '" + name + "' needs recorded iterates");
        wsum += s.eta * s.z_next;
        esum += s.eta;
        const Vector zbar = wsum / esum;
        const double aty = (d2->A.transpose() * zbar.tail(r.prob->n)).norm();
        const double diameter = 0.5 * (2.0 / d2->L2 * aty + r.r_dual * r.r_dual);
        col[static_cast<size_t>(k)] =
            name == "gap-stepsum"
                ? diameter / esum
                : g2 * d2->L2 * diameter * std::sqrt(D0) * std::pow(double(k + 1), -1.5);
      }
    } else if (name == "zeta-bound" || name == "zeta-sim") {
      if (!r.reference) throw ConfigError("overlay '" + name + "' needs a reference point");
      const double d0 = (traj.z0 - *r.reference).squaredNorm();
      const double scale = 2.0 / (2.0 - cfg.ls.alpha) * d0;
      if (name == "zeta-bound") {
        for (long k = 0; k < N; ++k) {
          col[static_cast<size_t>(k)] = scale * traj.steps[static_cast<size_t>(k)].zeta_next;
        }
      } else {
        if (!(r.prob->mu > 0.0) || !r.prob->lip2) {
          throw ConfigError("overlay 'zeta-sim' needs mu > 0 and a known smoothness constant");
        }
        const double D0 = 0.5 * d0;
        const double g2 = gamma2_constant(cfg.ls.alpha, cfg.ls.beta, r.map.smoothness());
        const double C = g2 * *r.prob->lip2 * std::sqrt(D0) / r.prob->mu;
        const std::vector<double> sim = simulated_zeta(C, N);
        for (long k = 0; k < N; ++k) {
          col[static_cast<size_t>(k)] = scale * sim[static_cast<size_t>(k + 1)];
        }
      }
      (void)p;
    } else {
      throw ConfigError("unknown overlay: " + name);
    }
    out.names.push_back(name);
    out.columns.push_back(std::move(col));
  }
  return out;
}

const char* status_name(StepStatus s) {
  switch (s) {
    case StepStatus::FixedStep: return "fixed";
    case StepStatus::AcceptedInitial: return "accepted-initial";
    case StepStatus::BetaOptimal: return "beta-optimal";
    case StepStatus::EarlyExitEpsilon: return "early-exit-epsilon";
  }
  return "?";
}

}  // namespace

int cli_solve(const SolveOptions& opt) {
  try {
    const std::string out_dir = resolve_out_dir(opt.out_dir);
    PreparedRun r;
    SolverConfig cfg;
    Trajectory traj;
    try {
      r = prepare(opt.problem, opt.seed, opt.method, opt.fixed_M, opt.mirror_eta,
                  opt.reg_lambda, /*want_reference=*/true);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }

    cfg.mu = r.prob->mu;
    cfg.ls.alpha = opt.alpha;
    cfg.ls.beta = opt.beta;
    cfg.ls.sigma = opt.sigma0;
    cfg.max_iters = opt.iters;
    cfg.target_residual = opt.eps;
    cfg.keep_iterates = true;
    cfg.gap_oracle = r.gap_oracle;
    cfg.reference_point = r.reference;

    try {
      traj = execute(r, opt.method, cfg, opt.p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }

    std::filesystem::create_directories(out_dir);
    write_trajectory_csv(out_dir + "/trajectory.csv", traj);

    if (!opt.overlays.empty()) {
      const OverlayColumns ov = build_overlays(opt.overlays, r, opt.problem, opt.method,
                                               cfg, traj, opt.p);
      std::ofstream out(out_dir + "/overlays.csv", std::ios::binary);
      out << "k";
      for (const std::string& n : ov.names) out << ',' << n;
      out << '\n';
      for (long k = 0; k < traj.iterations(); ++k) {
        out << k;
        for (const auto& col : ov.columns) out << ',' << format_double(col[static_cast<size_t>(k)]);
        out << '\n';
      }
    }

    const long iters = traj.iterations();
    std::ofstream sum(out_dir + "/summary.txt", std::ios::binary);
    sum << "method = " << method_name(opt.method) << '\n';
    for (const auto& [k, v] : problem_spec_to_kv(opt.problem)) sum << k << " = " << v << '\n';
    sum << "seed = " << opt.seed << '\n';
    sum << "rng = mt19937_64\n";
    sum << "eps = " << format_double(opt.eps) << '\n';
    sum << "stop_metric = inclusion-residual\n";
    if (opt.method == Method::FirstOrderFixed) sum << "M = " << format_double(r.M) << '\n';
    if (opt.method == Method::MirrorProx) sum << "eta = " << format_double(r.mirror_eta) << '\n';
    if (opt.method == Method::PthOrderLS) {
      sum << "p = " << opt.p << '\n';
      sum << "reg_lambda = " << format_double(r.reg_lambda) << '\n';
      sum << "inner_solver = "
          << (r.prob->smooth_unconstrained() && r.prob->has_second_contraction()
                  ? "newton"
                  : "first-order-optimistic")
          << '\n';
      sum << "inner_tol = " << format_double(cfg.resolved_inner_tol()) << '\n';
    }
    if (opt.method != Method::FirstOrderFixed && opt.method != Method::MirrorProx) {
      sum << "alpha = " << format_double(opt.alpha) << '\n';
      sum << "beta = " << format_double(opt.beta) << '\n';
      sum << "sigma0 = " << format_double(opt.sigma0) << '\n';
    }
    sum << "iterations = " << iters << '\n';
    sum << "total_subsolver_calls = " << traj.total_calls << '\n';
    sum << "avg_calls_per_iteration = "
        << format_double(iters > 0 ? double(traj.total_calls) / double(iters) : 0.0) << '\n';
    sum << "total_inner_iterations = " << traj.total_inner << '\n';
    sum << "final_residual = " << format_double(traj.final_residual()) << '\n';
    if (!traj.steps.empty() && traj.steps.back().gap) {
      sum << "final_gap = " << format_double(*traj.steps.back().gap) << '\n';
    }
    if (!traj.steps.empty() && traj.steps.back().dist2) {
      sum << "final_dist2 = " << format_double(*traj.steps.back().dist2) << '\n';
    }
    if (!traj.steps.empty()) {
      sum << "final_status = " << status_name(traj.steps.back().status) << '\n';
    }
    sum << "reached_target = " << (traj.reached_target ? 1 : 0) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "saddleopt: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "saddleopt: solver error: " << e.what() << '\n';
    return 3;
  }
}

int cli_bench_calls(const BenchCallsOptions& opt) {
  try {
    if (opt.repeats < 1) throw ConfigError("repeats must be >= 1");
    if (opt.method != Method::FirstOrderLS && opt.method != Method::SecondOrderLS) {
      throw ConfigError("bench-calls supports first-ls and second-ls");
    }
    const bool first = opt.method == Method::FirstOrderLS;
    const long iters = opt.iters > 0 ? opt.iters : (first ? 1000 : 500);
    const double eps = opt.eps > 0.0 ? opt.eps : (first ? 1e-9 : 1e-10);

    std::vector<ProblemSpec> problems = opt.problems;
    if (problems.empty()) {
      if (first) {
        problems.push_back(default_problem_spec(ProblemKind::Prob1, false));
        ProblemSpec sc = problems.back();
        sc.mu = 0.1;
        problems.push_back(sc);
      } else {
        problems.push_back(default_problem_spec(ProblemKind::Prob2, false));
        problems.push_back(default_problem_spec(ProblemKind::Prob2Sc, false));
      }
    }

    const std::string out_dir = resolve_out_dir(opt.out_dir);
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/bench_calls.csv", std::ios::binary);
    out << "method,problem,m,n,mu,sigma0,beta,repeats,iters,eps,base_seed,max_avg_calls\n";

    for (const ProblemSpec& spec : problems) {
      for (const double sigma0 : opt.sigma0_grid) {
        for (const double beta : opt.beta_grid) {
          std::vector<double> values(static_cast<size_t>(opt.repeats), 0.0);
          std::vector<std::exception_ptr> errors(static_cast<size_t>(opt.repeats));
          std::atomic<int> next{0};
          auto worker = [&]() {
            for (;;) {
              const int i = next.fetch_add(1);
              if (i >= opt.repeats) return;
              try {
                PreparedRun r = prepare(spec, opt.base_seed + static_cast<std::uint64_t>(i),
                                        opt.method, 0.0, 0.0, 0.0, /*want_reference=*/false);
                SolverConfig cfg;
                cfg.mu = r.prob->mu;
                cfg.ls.alpha = opt.alpha;
                cfg.ls.beta = beta;
                cfg.ls.sigma = sigma0;
                cfg.max_iters = iters;
                cfg.target_residual = eps;
                cfg.keep_iterates = false;
                const Trajectory traj = execute(r, opt.method, cfg, 3);
                const long done = std::max<long>(1, traj.iterations());
                values[static_cast<size_t>(i)] =
                    static_cast<double>(traj.total_calls) / static_cast<double>(done);
              } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
              }
            }
          };
          const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
          const unsigned nthreads = std::min<unsigned>(hw, static_cast<unsigned>(opt.repeats));
          std::vector<std::thread> pool;
          for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
          for (auto& th : pool) th.join();
          for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
          }
          const double cell = *std::max_element(values.begin(), values.end());
          out << method_name(opt.method) << ',' << problem_name(spec.kind) << ',' << spec.m
              << ',' << spec.n << ',' << format_double(spec.mu) << ','
              << format_double(sigma0) << ',' << format_double(beta) << ',' << opt.repeats
              << ',' << iters << ',' << format_double(eps) << ',' << opt.base_seed << ','
              << format_double(cell) << '\n';
          std::cout << problem_name(spec.kind) << " (m=" << spec.m << ", n=" << spec.n
                    << ", mu=" << spec.mu << ") sigma0=" << sigma0 << " beta=" << beta
                    << ": max avg calls/iter = " << cell << '\n';
        }
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "saddleopt: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "saddleopt: solver error: " << e.what() << '\n';
    return 3;
  }
}

int cli_compare(const CompareOptions& opt) {
  try {
    if (opt.methods.empty()) throw ConfigError("compare needs at least one method");
    const std::string out_dir = resolve_out_dir(opt.out_dir);

    struct Run {
      Method method;
      Trajectory traj;
      bool uses_gap = false;
      OverlayColumns overlays;
    };
    std::vector<Run> runs;
    long rows = 0;

    for (const Method method : opt.methods) {
      PreparedRun r;
      try {
        r = prepare(opt.problem, opt.seed, method, 0.0, 0.0, 0.0, /*want_reference=*/true);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      SolverConfig cfg;
      cfg.mu = r.prob->mu;
      cfg.ls.alpha = opt.alpha;
      cfg.ls.beta = opt.beta;
      cfg.ls.sigma = opt.sigma0;
      cfg.max_iters = opt.iters;
      cfg.target_residual = opt.eps;
      cfg.keep_iterates = true;
      cfg.gap_oracle = r.gap_oracle;
      cfg.reference_point = r.reference;
      Run run;
      run.method = method;
      try {
        run.traj = execute(r, method, cfg, 3);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      run.uses_gap = static_cast<bool>(r.gap_oracle);
      if (!opt.overlays.empty()) {
        std::vector<std::string> applicable;
        for (const std::string& name : opt.overlays) {
          // run-specific overlays silently skip methods they do not apply to
          try {
            OverlayColumns one = build_overlays({name}, r, opt.problem, method, cfg,
                                                run.traj, 3);
            run.overlays.names.push_back(name);
            run.overlays.columns.push_back(std::move(one.columns[0]));
          } catch (const ConfigError&) {
            if (opt.methods.size() == 1) throw;
          }
        }
        (void)applicable;
      }
      rows = std::max(rows, run.traj.iterations());
      runs.push_back(std::move(run));
    }

    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/compare.csv", std::ios::binary);
    out << "k";
    for (const Run& run : runs) {
      out << ',' << method_name(run.method) << (run.uses_gap ? "_gap" : "_dist2");
      for (const std::string& n : run.overlays.names) {
        out << ',' << method_name(run.method) << '_' << n;
      }
    }
    out << '\n';
    for (long k = 0; k < rows; ++k) {
      out << k;
      for (const Run& run : runs) {
        const bool has = k < run.traj.iterations();
        double metric = 0.0;
        bool present = false;
        if (has) {
          const StepRecord& s = run.traj.steps[static_cast<size_t>(k)];
          if (run.uses_gap && s.gap) {
            metric = *s.gap;
            present = true;
          } else if (!run.uses_gap && s.dist2) {
            metric = *s.dist2;
            present = true;
          }
        }
        out << ',';
        if (present) out << format_double(metric);
        for (const auto& col : run.overlays.columns) {
          out << ',';
          if (has) out << format_double(col[static_cast<size_t>(k)]);
        }
      }
      out << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "saddleopt: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "saddleopt: solver error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace saddleopt::bench
