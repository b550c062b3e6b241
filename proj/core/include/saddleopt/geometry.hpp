// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#pragma once

#include <functional>
#include <string>
#include <utility>

#include "saddleopt/types.hpp"

namespace saddleopt {

// Bregman geometry of the iterate space: a 1-strongly convex mirror map
// together with its gradient, smoothness constant and symmetry coefficient.
//
// Instances are immutable after construction and safe to share across
// concurrent solver runs. The Euclidean map Phi = 0.5*||.||_2^2 is the
// reference instance; custom maps plug in through the same interface.
class MirrorMap {
 public:
  static MirrorMap euclidean(Eigen::Index dim);

  // smoothness is the Lipschitz constant of grad_phi w.r.t. the chosen norm
  // (>= 1 for a 1-strongly convex map); symmetry is the declared symmetry
  // coefficient in [0, 1]. Neither is estimated numerically.
  static MirrorMap custom(Eigen::Index dim,
                          std::function<double(const Vector&)> phi,
                          std::function<Vector(const Vector&)> grad_phi,
                          double smoothness, double symmetry,
                          std::string norm_tag = "l2");

  Eigen::Index dim() const { return dim_; }
  bool is_euclidean() const { return euclidean_; }
  double smoothness() const { return smoothness_; }
  double symmetry() const { return symmetry_; }
  const std::string& norm_tag() const { return norm_tag_; }

  double phi(const Vector& z) const;
  Vector grad(const Vector& z) const;

  // Norm pair (||.||, ||.||_*); the shipped pair is (l2, l2), under which the
  // product-space norm is realized by plain concatenation.
  double norm(const Vector& v) const { return v.norm(); }
  double dual_norm(const Vector& v) const { return v.norm(); }

  void check_dim(const Vector& z, const char* where) const;

 private:
  MirrorMap() = default;

  Eigen::Index dim_ = 0;
  bool euclidean_ = true;
  double smoothness_ = 1.0;
  double symmetry_ = 1.0;
  std::string norm_tag_ = "l2";
  std::function<double(const Vector&)> phi_;
  std::function<Vector(const Vector&)> grad_;
};

// D_Phi(z_to, z_from) = Phi(z_to) - Phi(z_from) - <grad Phi(z_from), z_to - z_from>.
// Nonnegative, zero iff the points coincide.
double bregman_distance(const MirrorMap& map, const Vector& z_to, const Vector& z_from);

// Residual of the three-point identity
//   <grad Phi(u) - grad Phi(v), u - w> = D(u,v) + D(w,u) - D(w,v),
// returned as lhs - rhs. A correct map evaluates to ~0 for every triple;
// used as a diagnostic.
double three_point_gap(const MirrorMap& map, const Vector& u, const Vector& v,
                       const Vector& w);

}  // namespace saddleopt
