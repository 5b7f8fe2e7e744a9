#include "descent_geom/mean_width.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dg {

namespace {

constexpr double kPi = std::numbers::pi;

void check_boundary_direction(const ConvexBody& k, const Vec& p0, const Vec& u) {
  require_dim(p0, k.dim(), "first_variation");
  require_dim(u, k.dim(), "first_variation");
  const double band = 1e-9 * std::max(1.0, diameter(k));
  if (!contains(k, p0, band) || (k.affine_dim() == k.dim() && in_relative_interior(k, p0, band))) {
    fail(ErrorKind::PreconditionViolated, "first_variation: p0 is not on the boundary");
  }
  if (tangent_cone(k, p0).contains(u)) {
    fail(ErrorKind::PreconditionViolated, "first_variation: u lies in the tangent cone at p0");
  }
}

}  // namespace

double mean_width_exact2d(const ConvexBody& k) {
  if (k.dim() != 2) fail(ErrorKind::DimensionMismatch, "mean_width_exact2d: body is not planar");
  const auto& v = k.vertices();
  if (v.size() == 1) return 0.0;
  if (v.size() == 2) return 2.0 * (v[1] - v[0]).norm() / kPi;
  double per = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) per += (v[(i + 1) % v.size()] - v[i]).norm();
  return per / kPi;
}

double mean_width_quadrature(const ConvexBody& k, const SphereGrid& grid) {
  if (grid.dim != k.dim()) fail(ErrorKind::DimensionMismatch, "mean_width: grid dimension differs from body");
  Mat h = grid.directions.transpose() * k.matrix();
  Vec hmax = h.rowwise().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < hmax.size(); ++i) s += grid.weights[i] * hmax[i];
  return 2.0 / omega(k.dim()) * s;
}

double mean_width(const ConvexBody& k, const SphereGrid& grid) {
  if (grid.dim != k.dim()) fail(ErrorKind::DimensionMismatch, "mean_width: grid dimension differs from body");
  if (k.dim() == 1) return k.matrix().maxCoeff() - k.matrix().minCoeff();
  if (k.dim() == 2) return mean_width_exact2d(k);
  return mean_width_quadrature(k, grid);
}

double mean_width_ratio(int n, int k) {
  if (k < 1 || k >= n) fail(ErrorKind::InvalidInput, "mean_width_ratio: need 1 <= k < n");
  return omega(k + 1) / omega(k) * (omega(n) / omega(n + 1));
}

double intrinsic_mean_width(const ConvexBody& k, std::size_t grid_size, std::uint64_t seed) {
  AffineFrame f = affine_frame(k.vertices());
  if (f.dim() == 0) return 0.0;
  std::vector<Vec> local;
  for (const auto& v : k.vertices()) local.push_back(f.to_local(v));
  ConvexBody kl = hull(local);
  return mean_width(kl, make_grid(f.dim(), grid_size, seed));
}

double c0(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "c0: n must be >= 1");
  if (n == 1) return 1.0;
  return std::pow(2.0, -(n - 1)) * omega(n - 1) / ((n - 1) * omega(n));
}

double c1(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "c1: n must be >= 1");
  if (n == 1) return 1.0;
  if (n == 2) return kPi;
  return (n - 1) * std::pow(static_cast<double>(n), 0.5 * n) * omega(n) / omega(n - 1);
}

FirstVariation first_variation(const ConvexBody& k, const Vec& p0, const Vec& u, double eps,
                               const SphereGrid& grid) {
  if (!(eps > 0)) fail(ErrorKind::InvalidInput, "first_variation: eps must be positive");
  if (grid.dim != k.dim()) fail(ErrorKind::DimensionMismatch, "first_variation: grid dimension differs from body");
  check_boundary_direction(k, p0, u);
  const int n = k.dim();
  FirstVariation fv;
  fv.delta_w = mean_width(cap_body(k, p0 + eps * u), grid) - mean_width(k, grid);

  double integral = 0.0;
  if (n == 2) {
    const double phi = std::atan2(u[1], u[0]);
    std::vector<Arc> half{{phi - kPi / 2, phi + kPi / 2}};
    for (const auto& arc : intersect_arcs(arcs(normal_cone(k, p0)), half)) {
      integral += arc_integral_dot(arc, u);
    }
  } else {
    integral = integrate(grid, [&](const auto& th) {
      double d = th.dot(u);
      return d >= 0 && in_normal_cone(k, p0, th, 0.0) ? d : 0.0;
    });
  }
  fv.first_term = 2.0 / omega(n) * eps * integral;
  fv.remainder = fv.delta_w - fv.first_term;
  return fv;
}

Vec cap_gradient(const ConvexBody& k, const Vec& p, const SphereGrid& grid) {
  require_dim(p, k.dim(), "cap_gradient");
  const int n = k.dim();
  ConvexBody kp = cap_body(k, p);
  Vec g = Vec::Zero(n);
  if (n == 2) {
    for (const auto& arc : arcs(normal_cone(kp, p))) g += arc_integral_theta(arc);
  } else {
    if (grid.dim != n) fail(ErrorKind::DimensionMismatch, "cap_gradient: grid dimension differs from body");
    for (Eigen::Index i = 0; i < grid.directions.cols(); ++i) {
      Vec th = grid.directions.col(i);
      if (in_normal_cone(kp, p, th, 0.0)) g += grid.weights[i] * th;
    }
  }
  return 2.0 / omega(n) * g;
}

WidthDistanceBounds width_distance_bounds(const ConvexBody& k1, const ConvexBody& k2,
                                          const SphereGrid& grid, double tol) {
  if (!includes(k2, k1, kPointTol * std::max(1.0, k2.scale()))) {
    fail(ErrorKind::PreconditionViolated, "width_distance_bounds: first body is not inside the second");
  }
  const int n = k1.dim();
  WidthDistanceBounds b;
  b.dist = hausdorff(k1, k2);
  b.delta_w = mean_width(k2, grid) - mean_width(k1, grid);
  b.diam = diameter(k2);
  b.lhs_lower = b.diam > 0 ? std::pow(c0(n) / std::pow(b.diam, n - 1), 1.0 / n) * b.dist : 0.0;
  b.rhs_lower = std::pow(std::max(0.0, b.delta_w), 1.0 / n);
  b.upper = 2.0 * b.dist;
  b.upper_literal = 2.0 / omega(n) * b.dist;
  b.lower_ok = b.lhs_lower <= b.rhs_lower + tol;
  b.upper_ok = b.delta_w <= b.upper + tol;
  return b;
}

}  // namespace dg
