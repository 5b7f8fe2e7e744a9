#pragma once

// Polyhedral cones by generators, normal/tangent/dual cones, cap bodies,
// circular cones and spherical sector integrals.

#include "descent_geom/geom_core.hpp"

#include <vector>

namespace dg {

/// Lawson-Hanson nonnegative least squares: argmin |A x - b|, x >= 0.
Vec nnls(const Mat& a, const Vec& b, int max_iter = 0);

/// Cone {sum c_i g_i : c_i >= 0} with unit generators, apex at the origin.
/// An empty generator list is the zero cone.
class PolyCone {
 public:
  /// Normalizes, drops zero vectors and redundant generators.
  PolyCone(int dim, const std::vector<Vec>& generators);

  int dim() const { return dim_; }
  const std::vector<Vec>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  Mat matrix() const;

  /// NNLS residual of x against the generators is <= tol * max(1, |x|).
  bool contains(const Vec& x, double tol = 1e-8) const;

  /// Euclidean projection of x onto the cone.
  Vec project(const Vec& x) const;

 private:
  int dim_;
  std::vector<Vec> gens_;
};

PolyCone zero_cone(int n);
PolyCone whole_space(int n);
/// {u}* = {x : <x, u> >= 0}.
PolyCone half_space(const Vec& u);
PolyCone negate(const PolyCone& c);

PolyCone dual_cone(const PolyCone& c);
PolyCone intersect(const PolyCone& a, const PolyCone& b);

PolyCone tangent_cone(const ConvexBody& k, const Vec& q);
/// Computed as -dual(tangent_cone).
PolyCone normal_cone(const ConvexBody& k, const Vec& q);
/// Direct test <x, v - q> <= tol |x| for every vertex v.
bool in_normal_cone(const ConvexBody& k, const Vec& q, const Vec& x, double tol = 1e-8);

/// Angle between unit x and the cone: acos |P_C(x)| (pi/2 if the projection vanishes).
double angle_to_cone(const PolyCone& c, const Vec& x);

/// Planar cone as a union of closed angular intervals [a, b] with
/// a in [-pi, pi) and b - a <= 2 pi.
struct Arc {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
};
std::vector<Arc> arcs(const PolyCone& c);
std::vector<Arc> intersect_arcs(const std::vector<Arc>& x, const std::vector<Arc>& y);
/// Integral of <theta(phi), u> and of theta(phi) over an arc.
double arc_integral_dot(const Arc& arc, const Vec& u);
Vec arc_integral_theta(const Arc& arc);

/// K_{v,delta} = {x : angle(x, v) <= delta}.
struct CircularCone {
  Vec axis;  // unit
  double opening = 0.0;

  bool contains(const Vec& x, double tol = 1e-12) const;
  CircularCone dual() const;
};
CircularCone circular_cone(const Vec& axis, double opening);

ConvexBody cap_body(const ConvexBody& k, const Vec& p);
/// H_K(x) for x outside N_p, <x, p> for x in N_p, where N_p is the normal
/// cone of the cap body at p.
double cap_support(const ConvexBody& k, const Vec& p, const Vec& x);

/// omega_{n-1}/(n-1) sin^{n-1}(delta).
double sector_integral_exact(int n, double delta);
/// omega_{n-1}/(n-1) sin^n(alpha/4).
double sector_integral_lower_bound(int n, double alpha);

struct LimitStep {
  double eps = 0.0;
  Vec p_eps;
  bool upper_ok = false;  // N_eps inside {u}*
  bool lower_ok = false;  // N_K(p0) cap {u}* inside N_eps
  double metric = 0.0;    // angular Hausdorff distance to the limit sector
};

struct LimitReport {
  PolyCone limit;
  std::vector<LimitStep> steps;
  bool sandwich_ok = false;
  bool metric_decreasing = false;
  double final_metric = 0.0;
};

/// Normal cones of cap bodies at p0 + eps u against N_K(p0) cap {u}*.
LimitReport normal_cone_limit_report(const ConvexBody& k, const Vec& p0, const Vec& u,
                                     const std::vector<double>& eps_list,
                                     std::size_t probes = 10000, std::uint64_t seed = 1);

/// Angular Hausdorff distance between the unit sections of two cones,
/// exact in the plane and estimated from generators plus probes otherwise.
double angular_hausdorff(const PolyCone& a, const PolyCone& b, std::size_t probes = 10000,
                         std::uint64_t seed = 1);

}  // namespace dg
