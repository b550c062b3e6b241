// saddleopt: optimistic methods for composite convex-concave saddle point problems
// Licensed under the Apache License, Version 2.0
#include "saddleopt/geometry.hpp"

namespace saddleopt {

MirrorMap MirrorMap::euclidean(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("MirrorMap::euclidean: dim must be positive");
  MirrorMap m;
  m.dim_ = dim;
  m.euclidean_ = true;
  m.smoothness_ = 1.0;
  m.symmetry_ = 1.0;
  m.norm_tag_ = "l2";
  return m;
}

MirrorMap MirrorMap::custom(Eigen::Index dim,
                            std::function<double(const Vector&)> phi,
                            std::function<Vector(const Vector&)> grad_phi,
                            double smoothness, double symmetry,
                            std::string norm_tag) {
  if (dim <= 0) throw std::invalid_argument("MirrorMap::custom: dim must be positive");
  if (!phi || !grad_phi) throw std::invalid_argument("MirrorMap::custom: missing oracle");
  if (smoothness < 1.0) throw std::invalid_argument("MirrorMap::custom: smoothness must be >= 1");
  if (symmetry < 0.0 || symmetry > 1.0) {
    throw std::invalid_argument("MirrorMap::custom: symmetry must lie in [0,1]");
  }
  MirrorMap m;
  m.dim_ = dim;
  m.euclidean_ = false;
  m.smoothness_ = smoothness;
  m.symmetry_ = symmetry;
  m.norm_tag_ = std::move(norm_tag);
  m.phi_ = std::move(phi);
  m.grad_ = std::move(grad_phi);
  return m;
}

void MirrorMap::check_dim(const Vector& z, const char* where) const {
  if (z.size() != dim_) {
    throw std::invalid_argument(std::string(where) + ": point dimension does not match map");
  }
}

double MirrorMap::phi(const Vector& z) const {
  check_dim(z, "MirrorMap::phi");
  if (euclidean_) return 0.5 * z.squaredNorm();
  return phi_(z);
}

Vector MirrorMap::grad(const Vector& z) const {
  check_dim(z, "MirrorMap::grad");
  if (euclidean_) return z;
  return grad_(z);
}

double bregman_distance(const MirrorMap& map, const Vector& z_to, const Vector& z_from) {
  map.check_dim(z_to, "bregman_distance");
  map.check_dim(z_from, "bregman_distance");
  if (map.is_euclidean()) return 0.5 * (z_to - z_from).squaredNorm();
  return map.phi(z_to) - map.phi(z_from) - map.grad(z_from).dot(z_to - z_from);
}

double three_point_gap(const MirrorMap& map, const Vector& u, const Vector& v,
                       const Vector& w) {
  map.check_dim(u, "three_point_gap");
  map.check_dim(v, "three_point_gap");
  map.check_dim(w, "three_point_gap");
  const double lhs = (map.grad(u) - map.grad(v)).dot(u - w);
  const double rhs = bregman_distance(map, u, v) + bregman_distance(map, w, u) -
                     bregman_distance(map, w, v);
  return lhs - rhs;
}

}  // namespace saddleopt
