#include "descent_geom/sep.hpp"

#include <algorithm>
#include <cmath>

namespace dg {

Polyline::Polyline(const std::vector<Vec>& points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "Polyline: no points");
  const auto n = points[0].size();
  if (n < 1 || n > kMaxDim) fail(ErrorKind::InvalidInput, "Polyline: dimension outside [1, 8]");
  for (const auto& p : points) {
    if (p.size() != n) fail(ErrorKind::DimensionMismatch, "Polyline: mixed point dimensions");
    if (!all_finite(p)) fail(ErrorKind::InvalidInput, "Polyline: non-finite coordinate");
    if (pts_.empty() || (p - pts_.back()).norm() > kPointTol) pts_.push_back(p);
  }
}

double Polyline::length() const { return arc_lengths().back(); }

std::vector<double> Polyline::arc_lengths() const {
  std::vector<double> s(pts_.size(), 0.0);
  for (std::size_t i = 1; i < pts_.size(); ++i) s[i] = s[i - 1] + (pts_[i] - pts_[i - 1]).norm();
  return s;
}

bool operator==(const Polyline& a, const Polyline& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a.point(i) - b.point(i)).norm() > kPointTol) return false;
  }
  return true;
}

SepResult is_sep(const Polyline& gamma, double tol) {
  SepResult r;
  const auto& p = gamma.points();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Vec d = (p[i + 1] - p[i]).normalized();
    for (std::size_t j = 0; j < i; ++j) {
      Vec e = p[i] - p[j];
      double ne = e.norm();
      if (ne == 0.0) continue;
      double v = d.dot(e) / ne;
      if (v < -tol && v < worst) {
        worst = v;
        r.ok = false;
        r.witness = SepWitness{p[j], p[i], d, j, i, v};
      }
    }
  }
  return r;
}

std::vector<double> meanwidth_param(const Polyline& gamma, const SphereGrid& grid, double tol) {
  if (grid.dim != gamma.dim()) fail(ErrorKind::DimensionMismatch, "meanwidth_param: grid dimension differs");
  if (!is_sep(gamma, tol).ok) fail(ErrorKind::PreconditionViolated, "meanwidth_param: curve is not self-expanding");
  const auto& p = gamma.points();
  std::vector<double> w{0.0};
  std::vector<Vec> verts{p[0]};
  for (std::size_t i = 1; i < p.size(); ++i) {
    ConvexBody prev = hull(verts);
    if (contains(prev, p[i], tol * std::max(1.0, prev.scale()))) {
      fail(ErrorKind::PreconditionViolated,
           "meanwidth_param: vertex " + std::to_string(i) + " does not leave the hull of its prefix");
    }
    verts = prev.vertices();
    verts.push_back(p[i]);
    w.push_back(mean_width(hull(verts), grid));
  }
  return w;
}

LipschitzResult lipschitz_ratio(const Polyline& gamma, const SphereGrid& grid, double tol) {
  auto w = meanwidth_param(gamma, grid, tol);
  LipschitzResult r;
  r.bound = c1(gamma.dim());
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i) {
    double dw = w[i + 1] - w[i];
    if (!(dw > 0)) {
      ++r.zero_steps;
      continue;
    }
    double ratio = (gamma.point(i + 1) - gamma.point(i)).norm() / dw;
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = i;
    }
  }
  r.ok = r.max_ratio <= r.bound + tol;
  return r;
}

LengthBound length_bound_check(const Polyline& gamma, const SphereGrid& grid, double tol) {
  if (!is_sep(gamma).ok) fail(ErrorKind::PreconditionViolated, "length_bound_check: curve is not self-expanding");
  LengthBound b;
  b.length = gamma.length();
  b.w_hull = mean_width(hull(gamma.points()), grid);
  b.bound = c1(gamma.dim()) * b.w_hull;
  b.bound_ok = b.length <= b.bound + tol;
  return b;
}

}  // namespace dg
