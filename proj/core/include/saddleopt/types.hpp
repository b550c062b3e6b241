// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace saddleopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point z = (x, y) in the primal-dual product space.
struct PrimalDualPoint {
  Vector x;
  Vector y;

  Vector concat() const {
    Vector z(x.size() + y.size());
    z << x, y;
    return z;
  }

  static PrimalDualPoint split(const Vector& z, Eigen::Index m, Eigen::Index n) {
    if (z.size() != m + n) {
      throw std::invalid_argument("PrimalDualPoint::split: dimension mismatch");
    }
    return {z.head(m), z.tail(n)};
  }
};

// Thrown by a subsolver to reject a single trial stepsize; line searches
// treat that trial as inadmissible and keep going. Any other exception
// propagates out of the search.
struct TrialRejectedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A linear system too ill-conditioned to trust, which signals a stepsize that
// is too aggressive; the caller retries with a smaller one.
struct IllConditionedError : TrialRejectedError {
  using TrialRejectedError::TrialRejectedError;
};

// Thrown when a line-search subroutine exceeds its iteration cap, which means
// the local smoothness assumptions behind finite termination do not hold.
struct LineSearchCapError : std::runtime_error {
  double eta_lo = 0.0;
  double eta_up = 0.0;
  LineSearchCapError(const std::string& what, double lo, double up)
      : std::runtime_error(what), eta_lo(lo), eta_up(up) {}
};

// Thrown when the iterative inclusion solver fails to reach its tolerance.
struct InnerSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace saddleopt
