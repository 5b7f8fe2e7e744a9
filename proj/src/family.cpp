#include "descent_geom/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace dg {

namespace {

constexpr int kArcPoints = 32;
constexpr std::size_t kRadialDirections = 512;

double ordering_key(const ConvexBody& k) {
  if (k.dim() <= 2) return mean_width(k, make_grid(k.dim(), 4));
  static thread_local std::vector<SphereGrid> grids(kMaxDim + 1);
  auto& g = grids[static_cast<std::size_t>(k.dim())];
  if (g.dim != k.dim()) g = make_grid(k.dim(), 4000, 11);
  return mean_width_quadrature(k, g);
}

std::vector<Vec> to_local(const AffineFrame& f, const std::vector<Vec>& pts, bool identity) {
  if (identity) return pts;
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(f.to_local(p));
  return out;
}

std::vector<Vec> to_global(const AffineFrame& f, const std::vector<Vec>& pts, bool identity) {
  if (identity) return pts;
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(f.to_global(p));
  return out;
}

// Sutherland-Hodgman clipping of a polygon by a convex CCW polygon.
std::vector<Vec> clip_polygon(std::vector<Vec> poly, const std::vector<Vec>& clip) {
  auto side = [](const Vec& a, const Vec& b, const Vec& p) {
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
  };
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
    const Vec& a = clip[i];
    const Vec& b = clip[(i + 1) % clip.size()];
    std::vector<Vec> out;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const Vec& p = poly[j];
      const Vec& q = poly[(j + 1) % poly.size()];
      double sp = side(a, b, p), sq = side(a, b, q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
    poly = std::move(out);
  }
  return poly;
}

std::vector<Vec> interpolate_planar(const ConvexBody& a, const ConvexBody& b, double r) {
  const double rc = r / std::cos(std::numbers::pi / kArcPoints);
  std::vector<Vec> pts;
  for (const auto& v : a.vertices()) {
    for (int j = 0; j < kArcPoints; ++j) {
      double t = 2.0 * std::numbers::pi * j / kArcPoints;
      pts.push_back(v + rc * vec({std::cos(t), std::sin(t)}));
    }
  }
  ConvexBody grown = hull(pts);
  if (!b.is_planar_polygon()) return b.vertices();
  return clip_polygon(grown.vertices(), b.vertices());
}

std::vector<Vec> interpolate_radial(const ConvexBody& a, const ConvexBody& b, double r) {
  const int k = a.dim();
  const Vec c = centroid(a);
  const double slack = 1e-12 * (1.0 + b.scale());
  auto inside = [&](const Vec& x) { return distance(a, x) <= r + slack && distance(b, x) <= slack; };
  SphereGrid g = make_grid(k, kRadialDirections, 7);
  std::vector<Vec> pts = a.vertices();
  for (const auto& v : b.vertices()) {
    if (distance(a, v) <= r) pts.push_back(v);
  }
  const double reach = diameter(b) + 1.0;
  for (Eigen::Index i = 0; i < g.directions.cols(); ++i) {
    Vec th = g.directions.col(i);
    double lo = 0.0, hi = reach;
    for (int it = 0; it < 48; ++it) {
      double mid = 0.5 * (lo + hi);
      (inside(c + mid * th) ? lo : hi) = mid;
    }
    pts.push_back(c + lo * th);
  }
  return pts;
}

}  // namespace

Stratification validate_stratification(const std::vector<ConvexBody>& bodies, const std::vector<double>& params,
                                       double tol) {
  if (bodies.size() < 2) fail(ErrorKind::InvalidInput, "validate_stratification: need at least two bodies");
  if (!params.empty() && params.size() != bodies.size()) {
    fail(ErrorKind::InvalidInput, "validate_stratification: params and bodies differ in length");
  }
  const int n = bodies[0].dim();
  for (const auto& b : bodies) {
    if (b.dim() != n) fail(ErrorKind::DimensionMismatch, "validate_stratification: mixed dimensions");
  }
  std::vector<double> key(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) key[i] = params.empty() ? ordering_key(bodies[i]) : params[i];
  std::vector<std::size_t> order(bodies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key[x] < key[y]; });

  Stratification s;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    std::size_t i = order[idx];
    if (idx > 0) {
      std::size_t prev = order[idx - 1];
      const auto& a = bodies[prev];
      const auto& b = bodies[i];
      const double t = tol * std::max(1.0, b.scale());
      if (!includes(b, a, t)) {
        if (includes(a, b, t) && hausdorff(a, b) <= t) {
          fail(ErrorKind::Degenerate, "validate_stratification: bodies " + std::to_string(prev) + " and " +
                                          std::to_string(i) + " are identical");
        }
        throw NotAChainError(prev, i);
      }
      if (hausdorff(a, b) <= t) {
        fail(ErrorKind::Degenerate, "validate_stratification: bodies " + std::to_string(prev) + " and " +
                                        std::to_string(i) + " are identical");
      }
      if (!params.empty() && !(params[i] > params[prev])) {
        fail(ErrorKind::InvalidInput, "validate_stratification: params are not strictly increasing");
      }
    }
    s.bodies.push_back(bodies[i]);
    if (!params.empty()) s.params.push_back(params[i]);
  }
  return s;
}

Family make_family(const std::vector<ConvexBody>& bodies, double h, const SphereGrid& grid) {
  if (!(h > 0)) fail(ErrorKind::InvalidInput, "make_family: h must be positive");
  Family f{validate_stratification(bodies), h};
  for (const auto& b : f.strat.bodies) f.strat.params.push_back(mean_width(b, grid));
  return f;
}

ConvexBody interpolate(const ConvexBody& k1, const ConvexBody& k2, double f) {
  if (k1.dim() != k2.dim()) fail(ErrorKind::DimensionMismatch, "interpolate: dimensions differ");
  if (!(f >= 0.0 && f <= 1.0)) fail(ErrorKind::InvalidInput, "interpolate: fraction outside [0, 1]");
  if (!includes(k2, k1, kPointTol * std::max(1.0, k2.scale()))) {
    fail(ErrorKind::PreconditionViolated, "interpolate: first body is not inside the second");
  }
  if (f == 0.0) return k1;
  if (f == 1.0) return k2;
  const double r = f * hausdorff(k1, k2);
  if (r <= kPointTol) return k1;

  AffineFrame frame = affine_frame(k2.vertices());
  const int k = frame.dim();
  const bool identity = k == k2.dim();
  if (k == 0) return k2;
  ConvexBody a = hull(to_local(frame, k1.vertices(), identity));
  ConvexBody b = hull(to_local(frame, k2.vertices(), identity));

  std::vector<Vec> pts;
  if (k == 1) {
    double lo = std::max(b.matrix().minCoeff(), a.matrix().minCoeff() - r);
    double hi = std::min(b.matrix().maxCoeff(), a.matrix().maxCoeff() + r);
    pts = {Vec::Constant(1, lo), Vec::Constant(1, hi)};
  } else if (k == 2) {
    pts = interpolate_planar(a, b, r);
    for (const auto& v : a.vertices()) pts.push_back(v);
  } else {
    pts = interpolate_radial(a, b, r);
  }
  return hull(to_global(frame, pts, identity));
}

Family complete(const Stratification& strat, double h, const SphereGrid& grid, const CompleteOptions& opts) {
  if (!(h > 0)) fail(ErrorKind::InvalidInput, "complete: h must be positive");
  if (strat.size() < 2) fail(ErrorKind::InvalidInput, "complete: need at least two bodies");
  std::vector<double> w;
  for (const auto& b : strat.bodies) w.push_back(mean_width(b, grid));
  const double w0 = w.front(), w1 = w.back(), span = w1 - w0;
  if (!(span > 0)) fail(ErrorKind::Degenerate, "complete: mean widths of min and max coincide");

  const auto n_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / h * (1.0 - 1e-9))));
  const double near = 1e-6 * span;
  const double tol = std::min(opts.bisection_rel_tol * span, 1e-7 * h);

  Family out{{}, h};
  std::size_t orig = 0;
  auto push = [&](const ConvexBody& b, double wb) {
    out.strat.bodies.push_back(b);
    out.strat.params.push_back(wb);
  };
  for (std::size_t j = 0; j <= n_steps; ++j) {
    const double target = j == n_steps ? w1 : w0 + span * static_cast<double>(j) / static_cast<double>(n_steps);
    while (orig < w.size() && w[orig] <= target + near) {
      push(strat.bodies[orig], w[orig]);
      ++orig;
    }
    if (std::abs(out.strat.params.back() - target) <= near) continue;
    if (orig >= w.size()) break;
    const ConvexBody& lo_body = strat.bodies[orig - 1];
    const ConvexBody& hi_body = strat.bodies[orig];
    double flo = 0.0, fhi = 1.0;
    std::optional<ConvexBody> best;
    double best_w = 0.0;
    for (int it = 0; it < opts.max_bisection; ++it) {
      double fm = 0.5 * (flo + fhi);
      ConvexBody cand = interpolate(lo_body, hi_body, fm);
      double wc = mean_width(cand, grid);
      if (!best || std::abs(wc - target) < std::abs(best_w - target)) {
        best = cand;
        best_w = wc;
      }
      if (std::abs(wc - target) <= tol) break;
      (wc < target ? flo : fhi) = fm;
    }
    if (!best || std::abs(best_w - target) > tol) {
      fail(ErrorKind::NumericalFailure, "complete: bisection did not reach mean width " + std::to_string(target));
    }
    push(*best, best_w);
  }
  while (orig < w.size()) {
    push(strat.bodies[orig], w[orig]);
    ++orig;
  }
  return out;
}

bool is_connected(const Family& fam, double tol) {
  const int n = fam.dim();
  const auto& b = fam.bodies();
  const auto& w = fam.params();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double dw = w[i + 1] - w[i];
    if (dw > fam.h * (1.0 + tol)) return false;
    const double diam = diameter(b[i + 1]);
    const double limit = std::pow(std::pow(diam, n - 1) * std::max(dw, 0.0) / c0(n), 1.0 / n);
    if (hausdorff(b[i], b[i + 1]) > (1.0 + tol) * limit + kPointTol) return false;
  }
  return true;
}

ConvexBody body_at(const Family& fam, double w) {
  const auto& p = fam.params();
  const double eps = 1e-12 * std::max(1.0, std::abs(p.back()));
  if (w < p.front() - eps || w > p.back() + eps) {
    fail(ErrorKind::InvalidInput, "body_at: parameter outside the family interval");
  }
  auto it = std::lower_bound(p.begin(), p.end(), w - eps);
  auto i = static_cast<std::size_t>(it - p.begin());
  if (i < p.size() && std::abs(p[i] - w) <= eps) return fam.bodies()[i];
  if (i == 0) return fam.bodies().front();
  const double f = (w - p[i - 1]) / (p[i] - p[i - 1]);
  return interpolate(fam.bodies()[i - 1], fam.bodies()[i], std::clamp(f, 0.0, 1.0));
}

double family_distance(const Family& f, const Family& g) {
  if (f.dim() != g.dim()) fail(ErrorKind::DimensionMismatch, "family_distance: dimensions differ");
  const double scale = std::max({1.0, std::abs(f.w_max()), std::abs(g.w_max())});
  if (std::abs(f.w_min() - g.w_min()) > 1e-9 * scale || std::abs(f.w_max() - g.w_max()) > 1e-9 * scale) {
    fail(ErrorKind::InvalidInput, "family_distance: parameter intervals differ");
  }
  std::vector<double> ws = f.params();
  ws.insert(ws.end(), g.params().begin(), g.params().end());
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end(), [&](double a, double b) { return b - a <= 1e-12 * scale; }), ws.end());
  double d = 0.0;
  for (double w : ws) {
    w = std::clamp(w, std::max(f.w_min(), g.w_min()), std::min(f.w_max(), g.w_max()));
    d = std::max(d, hausdorff(body_at(f, w), body_at(g, w)));
  }
  return d;
}

Bracket bracket(const Family& fam, const ConvexBody& k, double tol) {
  const auto& b = fam.bodies();
  Bracket r;
  // Inclusion of K in members is monotone along the chain, so both ends are
  // found by binary search.
  std::size_t lo = 0, hi = b.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (includes(b[mid], k, tol)) hi = mid;
    else lo = mid + 1;
  }
  if (lo < b.size()) r.outer = lo;
  lo = 0;
  hi = b.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (includes(k, b[mid], tol)) lo = mid + 1;
    else hi = mid;
  }
  if (lo > 0) r.inner = lo - 1;
  return r;
}

}  // namespace dg
