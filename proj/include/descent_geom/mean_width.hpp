#pragma once

#include "descent_geom/cones.hpp"
#include "descent_geom/sphere.hpp"

namespace dg {

/// Perimeter / pi for bodies in the plane (a segment counts both sides),
/// length for intervals, quadrature (2/omega_n) sum w_i h(theta_i) otherwise.
double mean_width(const ConvexBody& k, const SphereGrid& grid);
double mean_width_exact2d(const ConvexBody& k);
double mean_width_quadrature(const ConvexBody& k, const SphereGrid& grid);

/// w_k / w_n for a body of affine dimension k in R^n.
double mean_width_ratio(int n, int k);

/// Mean width measured inside the affine hull of k.
double intrinsic_mean_width(const ConvexBody& k, std::size_t grid_size = kDefaultGridSize,
                            std::uint64_t seed = 1);

/// 2^{-(n-1)} omega_{n-1} / ((n-1) omega_n); 1 for n = 1.
double c0(int n);
/// Lipschitz constant of the mean-width parametrization of a SEP.
double c1(int n);

struct FirstVariation {
  double delta_w = 0.0;
  double first_term = 0.0;
  double remainder = 0.0;
};

FirstVariation first_variation(const ConvexBody& k, const Vec& p0, const Vec& u, double eps,
                               const SphereGrid& grid);

/// (2/omega_n) * integral of theta over the unit section of N_{K^p}(p).
Vec cap_gradient(const ConvexBody& k, const Vec& p, const SphereGrid& grid);

struct WidthDistanceBounds {
  double dist = 0.0;
  double delta_w = 0.0;
  double diam = 0.0;
  double lhs_lower = 0.0;      // (c0 / diam^{n-1})^{1/n} dist
  double rhs_lower = 0.0;      // delta_w^{1/n}
  double upper = 0.0;          // 2 dist
  double upper_literal = 0.0;  // (2/omega_n) dist
  bool lower_ok = false;
  bool upper_ok = false;
};

/// Requires k1 inside k2.
WidthDistanceBounds width_distance_bounds(const ConvexBody& k1, const ConvexBody& k2,
                                          const SphereGrid& grid, double tol = 1e-9);

}  // namespace dg
