#include "descent_geom/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace dg {

namespace {

constexpr int kWolfeMaxIter = 10000;

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

double max_abs_coord(std::span<const Vec> pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain on 2-vectors. Returns indices of the strictly
// convex vertices in CCW order starting at the lexicographically smallest.
std::vector<std::size_t> monotone_chain(const std::vector<Vec>& pts, double tol) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
  if (idx.size() < 3) return idx;

  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  auto keep_left = [&](std::size_t o, std::size_t a, std::size_t b) {
    // a stays only if it is strictly left of o->b by more than tol.
    double len = (pts[b] - pts[o]).norm();
    return cross2(pts[o], pts[a], pts[b]) > tol * std::max(len, 1e-300);
  };
  for (std::size_t i : idx) {
    while (k >= 2 && !keep_left(h[k - 2], h[k - 1], i)) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    std::size_t i = idx[t];
    while (k >= lo && !keep_left(h[k - 2], h[k - 1], i)) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

struct MinNorm {
  Vec x;
  bool converged = false;
};

// Wolfe's minimum-norm-point algorithm over the convex hull of the columns
// of p.
MinNorm wolfe_min_norm(const Mat& p) {
  const Eigen::Index m = p.cols();
  Eigen::VectorXd sq = p.colwise().squaredNorm().transpose();
  Eigen::Index j0 = 0;
  sq.minCoeff(&j0);
  const double scale2 = std::max(sq.maxCoeff(), 1e-300);
  const double stop_tol = 1e-13 * scale2;

  std::vector<Eigen::Index> active{j0};
  std::vector<double> lam{1.0};
  Vec x = p.col(j0);

  auto combo = [&](const std::vector<double>& w) {
    Vec r = Vec::Zero(p.rows());
    for (std::size_t i = 0; i < active.size(); ++i) r += w[i] * p.col(active[i]);
    return r;
  };

  for (int iter = 0; iter < kWolfeMaxIter; ++iter) {
    Vec dots = p.transpose() * x;
    Eigen::Index j = 0;
    dots.minCoeff(&j);
    const double gap = x.squaredNorm() - dots[j];
    if (gap <= stop_tol) return {x, true};
    if (std::find(active.begin(), active.end(), j) != active.end()) {
      return {x, gap <= 1e-9 * scale2};
    }
    active.push_back(j);
    lam.push_back(0.0);

    for (int minor = 0; minor < 4 * (m + 2); ++minor) {
      const auto s = static_cast<Eigen::Index>(active.size());
      Mat kkt = Mat::Zero(s + 1, s + 1);
      for (Eigen::Index a = 0; a < s; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
          double g = p.col(active[a]).dot(p.col(active[b]));
          kkt(a, b) = g;
          kkt(b, a) = g;
        }
        kkt(a, s) = 1.0;
        kkt(s, a) = 1.0;
      }
      Vec rhs = Vec::Zero(s + 1);
      rhs[s] = 1.0;
      Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      std::vector<double> mu(sol.data(), sol.data() + s);

      if (std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-14; })) {
        lam = mu;
        x = combo(lam);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] <= 1e-14) {
          double denom = lam[i] - mu[i];
          if (denom > 0) theta = std::min(theta, lam[i] / denom);
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (std::size_t i = 0; i < lam.size(); ++i) {
        lam[i] = theta * mu[i] + (1.0 - theta) * lam[i];
      }
      // Drop at least one coordinate that hit zero.
      std::size_t worst = 0;
      for (std::size_t i = 1; i < lam.size(); ++i) {
        if (lam[i] < lam[worst]) worst = i;
      }
      std::vector<Eigen::Index> keep_idx;
      std::vector<double> keep_lam;
      for (std::size_t i = 0; i < lam.size(); ++i) {
        if (i == worst || lam[i] <= 1e-14) continue;
        keep_idx.push_back(active[i]);
        keep_lam.push_back(lam[i]);
      }
      active = std::move(keep_idx);
      lam = std::move(keep_lam);
      double total = std::accumulate(lam.begin(), lam.end(), 0.0);
      for (double& v : lam) v /= total;
      x = combo(lam);
    }
  }
  return {x, false};
}

Vec project_segment(const Vec& a, const Vec& b, const Vec& p) {
  Vec d = b - a;
  double dd = d.squaredNorm();
  if (dd == 0.0) return a;
  double s = std::clamp((p - a).dot(d) / dd, 0.0, 1.0);
  return a + s * d;
}

Vec project_polygon(const ConvexBody& k, const Vec& p) {
  const auto& v = k.vertices();
  const std::size_t m = v.size();
  const double eps = 1e-15 * (1.0 + k.scale()) * (1.0 + k.scale());
  bool inside = true;
  for (std::size_t i = 0; i < m && inside; ++i) {
    if (cross2(v[i], v[(i + 1) % m], p) < -eps) inside = false;
  }
  if (inside) return p;
  Vec best = v[0];
  double best_d = (p - v[0]).squaredNorm();
  for (std::size_t i = 0; i < m; ++i) {
    Vec q = project_segment(v[i], v[(i + 1) % m], p);
    double d = (p - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

double contains_slack(const ConvexBody& k) { return 1e-12 * (1.0 + k.scale()); }

}  // namespace

AffineFrame affine_frame(std::span<const Vec> points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "affine_frame: empty point set");
  const auto n = points[0].size();
  Vec origin = Vec::Zero(n);
  for (const auto& p : points) origin += p;
  origin /= static_cast<double>(points.size());
  Mat centered(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) centered.col(static_cast<Eigen::Index>(i)) = points[i] - origin;

  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
  const Vec& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv[0] > kPointTol) {
    const double cut = std::max(1e-8 * sv[0], kPointTol);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv[i] > cut) ++rank;
    }
  }
  return {origin, svd.matrixU().leftCols(rank)};
}

ConvexBody ConvexBody::from_canonical(std::vector<Vec> vertices, int affine_dim) {
  if (vertices.empty()) fail(ErrorKind::InvalidInput, "from_canonical: empty vertex list");
  ConvexBody k;
  k.dim_ = static_cast<int>(vertices[0].size());
  k.affine_dim_ = affine_dim;
  k.vertices_ = std::move(vertices);
  k.finish();
  return k;
}

void ConvexBody::finish() {
  matrix_.resize(dim_, static_cast<Eigen::Index>(vertices_.size()));
  for (std::size_t i = 0; i < vertices_.size(); ++i) matrix_.col(static_cast<Eigen::Index>(i)) = vertices_[i];
  scale_ = max_abs_coord(vertices_);
}

bool operator==(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a.vertex(i) - b.vertex(i)).norm() > kPointTol) return false;
  }
  return true;
}

ConvexBody hull(std::span<const Vec> points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "hull: empty point list");
  const auto n = points[0].size();
  if (n < 1 || n > kMaxDim) {
    fail(ErrorKind::InvalidInput, "hull: dimension " + std::to_string(n) + " outside [1, 8]");
  }
  for (const auto& p : points) {
    if (p.size() != n) fail(ErrorKind::DimensionMismatch, "hull: mixed point dimensions");
    if (!all_finite(p)) fail(ErrorKind::InvalidInput, "hull: non-finite coordinate");
  }

  std::vector<Vec> uniq;
  uniq.reserve(points.size());
  {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[a][0] < points[b][0];
    });
    // Sweep on the first coordinate; only nearby candidates are compared.
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
      bool dup = false;
      for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
        if (points[i][0] - points[*it][0] > kPointTol) break;
        if ((points[i] - points[*it]).norm() <= kPointTol) {
          dup = true;
          break;
        }
      }
      if (!dup) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    for (std::size_t i : kept) uniq.push_back(points[i]);
  }

  const double scale = std::max(1.0, max_abs_coord(uniq));
  const double tol = kPointTol * scale;
  AffineFrame frame = affine_frame(uniq);
  const int k = frame.dim();

  std::vector<std::size_t> ext;
  if (k == 0) {
    ext = {0};
  } else if (k == 1) {
    std::size_t lo = 0, hi = 0;
    double zlo = frame.to_local(uniq[0])[0], zhi = zlo;
    for (std::size_t i = 1; i < uniq.size(); ++i) {
      double z = frame.to_local(uniq[i])[0];
      if (z < zlo) { zlo = z; lo = i; }
      if (z > zhi) { zhi = z; hi = i; }
    }
    ext = {lo, hi};
  } else if (k == 2) {
    if (n == 2) {
      ext = monotone_chain(uniq, tol);
    } else {
      std::vector<Vec> local;
      local.reserve(uniq.size());
      for (const auto& p : uniq) local.push_back(frame.to_local(p));
      ext = monotone_chain(local, tol);
    }
  } else {
    std::vector<Vec> local;
    local.reserve(uniq.size());
    for (const auto& p : uniq) local.push_back(k < n ? frame.to_local(p) : p);
    const std::size_t m = local.size();

    // Unique maximizers of random linear functionals are extreme.
    std::vector<char> certain(m, 0);
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 16 * k; ++t) {
      Vec d(k);
      for (int i = 0; i < k; ++i) d[i] = gauss(rng);
      std::size_t best = 0, second = m;
      double bv = local[0].dot(d), sv = -1e300;
      for (std::size_t i = 1; i < m; ++i) {
        double v = local[i].dot(d);
        if (v > bv) { sv = bv; second = best; bv = v; best = i; }
        else if (v > sv) { sv = v; second = i; }
      }
      if (second == m || bv - sv > tol) certain[best] = 1;
    }
    std::vector<char> alive(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (certain[i]) continue;
      std::vector<Eigen::Index> others;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i && alive[j]) others.push_back(static_cast<Eigen::Index>(j));
      }
      Mat p(k, static_cast<Eigen::Index>(others.size()));
      for (std::size_t c = 0; c < others.size(); ++c) p.col(static_cast<Eigen::Index>(c)) = local[others[c]] - local[i];
      MinNorm mn = wolfe_min_norm(p);
      if (mn.x.norm() <= tol) alive[i] = 0;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (alive[i]) ext.push_back(i);
    }
  }

  std::vector<Vec> verts;
  verts.reserve(ext.size());
  for (std::size_t i : ext) verts.push_back(uniq[i]);
  if (!(n == 2 && k == 2)) {
    std::sort(verts.begin(), verts.end(), lex_less);
  }
  ConvexBody body;
  body.dim_ = static_cast<int>(n);
  body.affine_dim_ = k;
  body.vertices_ = std::move(verts);
  body.finish();
  return body;
}

double support(const ConvexBody& k, const Vec& x) {
  require_dim(x, k.dim(), "support");
  return (k.matrix().transpose() * x).maxCoeff();
}

std::size_t support_vertex(const ConvexBody& k, const Vec& x) {
  require_dim(x, k.dim(), "support_vertex");
  Eigen::Index i = 0;
  (k.matrix().transpose() * x).maxCoeff(&i);
  return static_cast<std::size_t>(i);
}

double projection_certificate(const ConvexBody& k, const Vec& p, const Vec& q) {
  Vec r = p - q;
  return (k.matrix().transpose() * r).maxCoeff() - r.dot(q);
}

ProjectionResult project_detail(const ConvexBody& k, const Vec& p) {
  require_dim(p, k.dim(), "project");
  const auto& v = k.vertices();
  Vec q;
  if (v.size() == 1) {
    q = v[0];
  } else if (v.size() == 2) {
    q = project_segment(v[0], v[1], p);
  } else if (k.dim() == 1) {
    double lo = k.matrix().minCoeff(), hi = k.matrix().maxCoeff();
    q = Vec::Constant(1, std::clamp(p[0], lo, hi));
  } else if (k.is_planar_polygon()) {
    q = project_polygon(k, p);
  } else {
    Mat shifted = k.matrix().colwise() - p;
    MinNorm mn = wolfe_min_norm(shifted);
    q = p + mn.x;
    if (!mn.converged) {
      double cert = projection_certificate(k, p, q);
      if (cert > 1e-8 * (1.0 + (p - q).norm())) {
        fail(ErrorKind::NumericalFailure, "project: minimum-norm iteration did not converge");
      }
    }
  }
  const double cert = projection_certificate(k, p, q);
  const double dist = (p - q).norm();
  if (cert > 1e-8 * (1.0 + dist) * std::max(1.0, k.scale())) {
    fail(ErrorKind::NumericalFailure,
         "project: optimality certificate violated (" + std::to_string(cert) + ")");
  }
  return {q, dist};
}

Vec project(const ConvexBody& k, const Vec& p) { return project_detail(k, p).point; }

double distance(const ConvexBody& k, const Vec& p) { return project_detail(k, p).distance; }

bool contains(const ConvexBody& k, const Vec& p, double tol) {
  if (tol < 0) fail(ErrorKind::InvalidInput, "contains: negative tolerance");
  require_dim(p, k.dim(), "contains");
  if (k.is_planar_polygon()) {
    // Cheap exact rejection/acceptance before projecting.
    const auto& v = k.vertices();
    bool inside = true;
    const double eps = 1e-15 * (1.0 + k.scale()) * (1.0 + k.scale());
    for (std::size_t i = 0; i < v.size() && inside; ++i) {
      if (cross2(v[i], v[(i + 1) % v.size()], p) < -eps) inside = false;
    }
    if (inside) return true;
  }
  return distance(k, p) <= tol + contains_slack(k);
}

bool includes(const ConvexBody& a, const ConvexBody& b, double tol) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "includes: ambient dimensions differ");
  for (const auto& v : b.vertices()) {
    if (!contains(a, v, tol)) return false;
  }
  return true;
}

double hausdorff(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "hausdorff: ambient dimensions differ");
  double d = 0.0;
  for (const auto& v : a.vertices()) d = std::max(d, distance(b, v));
  for (const auto& v : b.vertices()) d = std::max(d, distance(a, v));
  return d;
}

double diameter(const ConvexBody& k) {
  double d = 0.0;
  const auto& v = k.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, (v[i] - v[j]).squaredNorm());
  }
  return std::sqrt(d);
}

Vec centroid(const ConvexBody& k) { return k.matrix().rowwise().mean(); }

std::optional<std::pair<double, double>> clip_segment(const ConvexBody& k, const Vec& a,
                                                      const Vec& b, double tol) {
  require_dim(a, k.dim(), "clip_segment");
  require_dim(b, k.dim(), "clip_segment");
  const Vec d = b - a;
  if (k.is_planar_polygon()) {
    const auto& v = k.vertices();
    double lo = 0.0, hi = 1.0;
    const double slack = tol * (1.0 + k.scale());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec& p0 = v[i];
      const Vec& p1 = v[(i + 1) % v.size()];
      Vec e = p1 - p0;
      Vec nrm(2);
      nrm << e[1], -e[0];
      nrm.normalize();
      // <nrm, a + s d - p0> <= slack
      double c0 = nrm.dot(a - p0) - slack;
      double c1 = nrm.dot(d);
      if (std::abs(c1) < 1e-300) {
        if (c0 > 0) return std::nullopt;
        continue;
      }
      double s = -c0 / c1;
      if (c1 > 0) hi = std::min(hi, s);
      else lo = std::max(lo, s);
      if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
  }

  auto f = [&](double s) { return distance(k, Vec(a + s * d)); };
  const double slack = tol * (1.0 + k.scale()) + 1e-12 * (1.0 + k.scale());
  // Golden-section search for the minimizer of the convex distance.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x0 = 0.0, x3 = 1.0;
  double x1 = x3 - g * (x3 - x0), x2 = x0 + g * (x3 - x0);
  double f1 = f(x1), f2 = f(x2);
  double best_s = 0.0, best_f = f(0.0);
  if (double f_end = f(1.0); f_end < best_f) { best_f = f_end; best_s = 1.0; }
  for (int it = 0; it < 80 && best_f > slack; ++it) {
    if (f1 < best_f) { best_f = f1; best_s = x1; }
    if (f2 < best_f) { best_f = f2; best_s = x2; }
    if (f1 <= f2) {
      x3 = x2; x2 = x1; f2 = f1;
      x1 = x3 - g * (x3 - x0); f1 = f(x1);
    } else {
      x0 = x1; x1 = x2; f1 = f2;
      x2 = x0 + g * (x3 - x0); f2 = f(x2);
    }
  }
  if (best_f > slack) return std::nullopt;

  auto inside = [&](double s) { return f(s) <= slack; };
  double lo = 0.0, hi = 1.0;
  if (!inside(0.0)) {
    double out = 0.0, in = best_s;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (out + in);
      (inside(mid) ? in : out) = mid;
    }
    lo = in;
  }
  if (!inside(1.0)) {
    double in = best_s, out = 1.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (out + in);
      (inside(mid) ? in : out) = mid;
    }
    hi = in;
  }
  return std::make_pair(lo, hi);
}

ConvexBody scaled(const ConvexBody& k, const Vec& center, double factor) {
  if (!(factor > 0)) fail(ErrorKind::InvalidInput, "scaled: factor must be positive");
  require_dim(center, k.dim(), "scaled");
  std::vector<Vec> v;
  v.reserve(k.size());
  for (const auto& x : k.vertices()) v.push_back(center + factor * (x - center));
  // Collapsing below the dedup tolerance loses canonical form; rebuild.
  if (factor * diameter(k) <= 10 * kPointTol) return hull(v);
  return ConvexBody::from_canonical(std::move(v), k.affine_dim());
}

ConvexBody translated(const ConvexBody& k, const Vec& t) {
  require_dim(t, k.dim(), "translated");
  std::vector<Vec> v;
  v.reserve(k.size());
  for (const auto& x : k.vertices()) v.push_back(x + t);
  return ConvexBody::from_canonical(std::move(v), k.affine_dim());
}

ConvexBody contracted(const ConvexBody& k, double band) {
  Vec c = centroid(k);
  double r = 0.0;
  for (const auto& v : k.vertices()) r = std::max(r, (v - c).norm());
  if (r <= band) {
    std::vector<Vec> one{c};
    return hull(one);
  }
  return scaled(k, c, 1.0 - band / r);
}

bool in_relative_interior(const ConvexBody& k, const Vec& x, double band) {
  if (k.size() == 1) return (x - k.vertex(0)).norm() <= band;
  return contains(contracted(k, band), x, 0.0);
}

bool on_relative_boundary(const ConvexBody& k, const Vec& x, double band) {
  if (!contains(k, x, band)) return false;
  return !in_relative_interior(k, x, band);
}

ConvexBody regular_polygon(const Vec& center, double radius, int m, double phase) {
  if (center.size() != 2) fail(ErrorKind::DimensionMismatch, "regular_polygon: center must be planar");
  if (m < 3 || !(radius > 0)) fail(ErrorKind::InvalidInput, "regular_polygon: need m >= 3 and radius > 0");
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    double a = phase + 2.0 * std::numbers::pi * j / m;
    pts.push_back(center + radius * vec({std::cos(a), std::sin(a)}));
  }
  return hull(pts);
}

}  // namespace dg
