#pragma once

#include "descent_geom/types.hpp"

#include <cstdint>

namespace dg {

/// Surface measure of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double omega(int n);

/// Quadrature nodes on S^{n-1}. Weights sum to omega(dim).
struct SphereGrid {
  int dim = 0;
  Mat directions;  // dim x N, unit columns
  Vec weights;     // N
  std::uint64_t seed = 0;

  std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
};

inline constexpr std::size_t kDefaultGridSize = 20000;

/// n = 1: the two points +-1. n = 2: equally spaced angles with a seeded
/// offset. n = 3: spherical Fibonacci lattice under a seeded rotation.
/// n >= 4: seeded Monte Carlo (normalized Gaussians), equal weights.
SphereGrid make_grid(int n, std::size_t size = kDefaultGridSize, std::uint64_t seed = 1);

/// Weighted sum of f over the nodes, in index order.
template <class F>
double integrate(const SphereGrid& g, F&& f) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.weights.size(); ++i) s += g.weights[i] * f(g.directions.col(i));
  return s;
}

}  // namespace dg
