#pragma once

// Convex bodies in V-representation: hull canonicalization, support
// functions, nearest-point projection, containment and Hausdorff distance.

#include "descent_geom/types.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dg {

/// Orthonormal frame of an affine subspace: x = origin + basis * z.
struct AffineFrame {
  Vec origin;
  Mat basis;  // n x k, orthonormal columns

  int ambient_dim() const { return static_cast<int>(origin.size()); }
  int dim() const { return static_cast<int>(basis.cols()); }
  Vec to_local(const Vec& x) const { return basis.transpose() * (x - origin); }
  Vec to_global(const Vec& z) const { return origin + basis * z; }
};

/// Affine hull of a point set. The rank cut is 1e-8 times the largest
/// singular value of the centered point matrix (absolute floor kPointTol).
AffineFrame affine_frame(std::span<const Vec> points);

/// A convex body stored as the extreme points of its hull.
///
/// Canonical order: counter-clockwise starting at the lexicographically
/// smallest vertex for full-dimensional planar bodies, lexicographic
/// otherwise. Instances are immutable.
class ConvexBody {
 public:
  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const Vec& vertex(std::size_t i) const { return vertices_[i]; }
  /// Vertices as columns (n x m).
  const Mat& matrix() const { return matrix_; }

  /// True for a full-dimensional polygon in R^2 (vertices in CCW order).
  bool is_planar_polygon() const { return dim_ == 2 && affine_dim_ == 2; }

  double scale() const { return scale_; }

  /// Rebuilds a body from points already known to be the extreme points of
  /// their hull in canonical order (e.g. the image of a canonical body
  /// under a similarity). No hull computation is done.
  static ConvexBody from_canonical(std::vector<Vec> vertices, int affine_dim);

  friend bool operator==(const ConvexBody& a, const ConvexBody& b);

 private:
  ConvexBody() = default;
  friend ConvexBody hull(std::span<const Vec> points);

  void finish();

  int dim_ = 0;
  int affine_dim_ = 0;
  double scale_ = 0.0;
  std::vector<Vec> vertices_;
  Mat matrix_;
};

ConvexBody hull(std::span<const Vec> points);
inline ConvexBody hull(const std::vector<Vec>& points) {
  return hull(std::span<const Vec>(points.data(), points.size()));
}

double support(const ConvexBody& k, const Vec& x);
/// Index of a vertex attaining the support value in direction x.
std::size_t support_vertex(const ConvexBody& k, const Vec& x);

struct ProjectionResult {
  Vec point;
  double distance = 0.0;
};

/// Nearest point of the body to p. Exact edge enumeration in the plane,
/// Wolfe's minimum-norm-point active-set method otherwise. Throws
/// NumericalFailure if the optimality certificate cannot be established.
ProjectionResult project_detail(const ConvexBody& k, const Vec& p);
Vec project(const ConvexBody& k, const Vec& p);
double distance(const ConvexBody& k, const Vec& p);

/// Largest value of <p - q, v - q> over vertices v (q = projection of p).
/// Non-positive up to rounding for an exact projection.
double projection_certificate(const ConvexBody& k, const Vec& p, const Vec& q);

bool contains(const ConvexBody& k, const Vec& p, double tol);
/// a contains b, i.e. b is a subset of a.
bool includes(const ConvexBody& a, const ConvexBody& b, double tol);

double hausdorff(const ConvexBody& a, const ConvexBody& b);

double diameter(const ConvexBody& k);
Vec centroid(const ConvexBody& k);

/// Points of the segment a + s (b - a), s in [0,1], that lie in k, as a
/// parameter interval. Exact clipping for planar polygons; otherwise
/// bisection on the convex distance function.
std::optional<std::pair<double, double>> clip_segment(const ConvexBody& k,
                                                      const Vec& a,
                                                      const Vec& b,
                                                      double tol = 1e-12);

/// Homothety about center: center + factor * (v - center). factor > 0.
ConvexBody scaled(const ConvexBody& k, const Vec& center, double factor);
ConvexBody translated(const ConvexBody& k, const Vec& t);

/// Relative boundary test with a two-sided band: x is within band of k but
/// outside the copy of k contracted by band toward its centroid.
bool on_relative_boundary(const ConvexBody& k, const Vec& x, double band);
bool in_relative_interior(const ConvexBody& k, const Vec& x, double band);

/// The copy of k contracted toward its centroid so that no vertex moves by
/// more than band (a point once band reaches the circumradius).
ConvexBody contracted(const ConvexBody& k, double band);

/// Regular m-gon of the given circumradius, first vertex at angle phase.
ConvexBody regular_polygon(const Vec& center, double radius, int m,
                           double phase = 0.0);

}  // namespace dg
