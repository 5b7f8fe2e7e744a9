#include "descent_geom/cones.hpp"

#include "descent_geom/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGenTol = 1e-10;

double wrap_angle(double a) {
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a - kPi;
}

std::vector<Vec> normalized_unique(int dim, const std::vector<Vec>& gens) {
  std::vector<Vec> out;
  for (const auto& g : gens) {
    require_dim(g, dim, "PolyCone");
    double nr = g.norm();
    if (!(nr > 1e-14)) continue;
    Vec u = g / nr;
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const Vec& w) { return (w - u).norm() <= kPointTol; });
    if (!dup) out.push_back(u);
  }
  return out;
}

Mat columns(const std::vector<Vec>& v, int dim) {
  Mat m(dim, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

double nnls_residual(const Mat& a, const Vec& b) {
  Vec x = nnls(a, b);
  return (a * x - b).norm();
}

std::vector<Vec> reduce_generators(int dim, std::vector<Vec> gens) {
  if (gens.size() <= 1) return gens;

  Vec c = Vec::Zero(dim);
  for (const auto& g : gens) c += g;
  bool pointed = c.norm() > 1e-12;
  if (pointed) {
    c.normalize();
    pointed = std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return g.dot(c) > 1e-6; });
  }
  if (pointed) {
    std::vector<Vec> section;
    section.reserve(gens.size());
    for (const auto& g : gens) section.push_back(g / g.dot(c));
    ConvexBody h = hull(section);
    std::vector<Vec> out;
    for (const auto& v : h.vertices()) out.push_back(v.normalized());
    return out;
  }

  std::vector<char> alive(gens.size(), 1);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i && alive[j]) others.push_back(gens[j]);
    }
    if (others.empty()) continue;
    if (nnls_residual(columns(others, dim), gens[i]) <= kGenTol) alive[i] = 0;
  }
  std::vector<Vec> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (alive[i]) out.push_back(gens[i]);
  }
  return out;
}

// Calls f on every k-subset of {0..m-1}.
template <class F>
void for_each_subset(int m, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > m) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool angle_in_arc(double t, const Arc& arc) {
  for (int k = -1; k <= 1; ++k) {
    double s = t + kTwoPi * k;
    if (s >= arc.a - 1e-15 && s <= arc.b + 1e-15) return true;
  }
  return false;
}

double circ_dist(double s, double t) {
  double d = std::fmod(std::abs(s - t), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double arc_distance(double t, const std::vector<Arc>& arcs_b) {
  double best = kPi;
  for (const auto& arc : arcs_b) {
    if (angle_in_arc(t, arc)) return 0.0;
    best = std::min({best, circ_dist(t, arc.a), circ_dist(t, arc.b)});
  }
  return best;
}

double directed_arc_hausdorff(const std::vector<Arc>& a, const std::vector<Arc>& b) {
  std::vector<double> cand;
  for (const auto& arc : a) {
    cand.push_back(arc.a);
    cand.push_back(arc.b);
  }
  std::vector<double> ends;
  for (const auto& arc : b) {
    ends.push_back(wrap_angle(arc.a));
    ends.push_back(wrap_angle(arc.b));
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    double lo = ends[i];
    double hi = i + 1 < ends.size() ? ends[i + 1] : ends[0] + kTwoPi;
    double mid = 0.5 * (lo + hi);
    if (std::any_of(a.begin(), a.end(), [&](const Arc& arc) { return angle_in_arc(wrap_angle(mid), arc); })) {
      cand.push_back(wrap_angle(mid));
    }
  }
  double d = 0.0;
  for (double t : cand) d = std::max(d, arc_distance(t, b));
  return d;
}

std::vector<Vec> section_samples(const PolyCone& c, const SphereGrid& grid) {
  std::vector<Vec> s = c.generators();
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Vec m = g[i] + g[j];
      if (m.norm() > 1e-12) s.push_back(m.normalized());
    }
  }
  for (Eigen::Index i = 0; i < grid.directions.cols(); ++i) {
    Vec x = grid.directions.col(i);
    if (c.contains(x)) s.push_back(x);
  }
  return s;
}

bool on_ambient_boundary(const ConvexBody& k, const Vec& p) {
  const double band = 1e-9 * std::max(1.0, diameter(k));
  if (!contains(k, p, band)) return false;
  if (k.affine_dim() < k.dim()) return true;
  return !in_relative_interior(k, p, band);
}

}  // namespace

Vec nnls(const Mat& a, const Vec& b, int max_iter) {
  const Eigen::Index m = a.cols();
  if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "nnls: rhs size");
  if (max_iter <= 0) max_iter = static_cast<int>(3 * m + 30);
  Vec x = Vec::Zero(m);
  if (m == 0) return x;
  std::vector<char> passive(static_cast<std::size_t>(m), 0);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, a.cwiseAbs().maxCoeff()) * static_cast<double>(std::max(a.rows(), m)) *
                     std::max(1.0, b.norm());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> p;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (passive[static_cast<std::size_t>(j)]) p.push_back(j);
    }
    Mat ap(a.rows(), static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) ap.col(static_cast<Eigen::Index>(i)) = a.col(p[i]);
    Vec zp = ap.completeOrthogonalDecomposition().solve(b);
    Vec z = Vec::Zero(m);
    for (std::size_t i = 0; i < p.size(); ++i) z[p[i]] = zp[static_cast<Eigen::Index>(i)];
    return z;
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    Vec w = a.transpose() * (b - a * x);
    Eigen::Index jmax = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
        wmax = w[j];
        jmax = j;
      }
    }
    if (jmax < 0) break;
    passive[static_cast<std::size_t>(jmax)] = 1;

    for (int inner = 0; inner <= m; ++inner) {
      Vec z = solve_passive();
      bool positive = true;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0) positive = false;
      }
      if (positive) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0) {
          double d = x[j] - z[j];
          if (d > 0) alpha = std::min(alpha, x[j] / d);
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = 0;
          x[j] = 0.0;
        }
      }
    }
  }
  return x.cwiseMax(0.0);
}

PolyCone::PolyCone(int dim, const std::vector<Vec>& generators) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) fail(ErrorKind::InvalidInput, "PolyCone: dimension outside [1, 8]");
  gens_ = reduce_generators(dim, normalized_unique(dim, generators));
}

Mat PolyCone::matrix() const { return columns(gens_, dim_); }

bool PolyCone::contains(const Vec& x, double tol) const {
  require_dim(x, dim_, "PolyCone::contains");
  const double bound = tol * std::max(1.0, x.norm());
  if (gens_.empty()) return x.norm() <= bound;
  return nnls_residual(matrix(), x) <= bound;
}

Vec PolyCone::project(const Vec& x) const {
  require_dim(x, dim_, "PolyCone::project");
  if (gens_.empty()) return Vec::Zero(dim_);
  Mat g = matrix();
  return g * nnls(g, x);
}

PolyCone zero_cone(int n) { return PolyCone(n, {}); }

PolyCone whole_space(int n) {
  std::vector<Vec> g;
  for (int i = 0; i < n; ++i) {
    g.push_back(Vec::Unit(n, i));
    g.push_back(-Vec::Unit(n, i));
  }
  return PolyCone(n, g);
}

PolyCone half_space(const Vec& u) {
  const int n = static_cast<int>(u.size());
  if (!(u.norm() > 0)) fail(ErrorKind::InvalidInput, "half_space: zero normal");
  std::vector<Vec> g{u.normalized()};
  Eigen::JacobiSVD<Mat> svd(Mat(u.transpose()), Eigen::ComputeFullV);
  for (int i = 1; i < n; ++i) {
    Vec b = svd.matrixV().col(i);
    g.push_back(b);
    g.push_back(-b);
  }
  return PolyCone(n, g);
}

PolyCone negate(const PolyCone& c) {
  std::vector<Vec> g;
  for (const auto& v : c.generators()) g.push_back(-v);
  return PolyCone(c.dim(), g);
}

PolyCone dual_cone(const PolyCone& c) {
  const int n = c.dim();
  if (c.is_zero()) return whole_space(n);
  Mat g = c.matrix();
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU);
  const Vec& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-10 * sv[0]) ++r;
  }
  Mat basis = svd.matrixU().leftCols(r);
  Mat a = g.transpose() * basis;  // m x r
  const int m = static_cast<int>(a.rows());

  std::vector<Vec> out;
  auto try_dir = [&](const Vec& z) {
    Vec zn = z.normalized();
    if ((a * zn).minCoeff() >= -1e-9) out.push_back(basis * zn);
  };
  if (r == 1) {
    try_dir(Vec::Ones(1));
    try_dir(-Vec::Ones(1));
  } else {
    for_each_subset(m, r - 1, [&](const std::vector<int>& rows) {
      Mat s(r - 1, r);
      for (int i = 0; i < r - 1; ++i) s.row(i) = a.row(rows[static_cast<std::size_t>(i)]);
      Eigen::JacobiSVD<Mat> ss(s, Eigen::ComputeFullV);
      const Vec& sig = ss.singularValues();
      if (sig[r - 2] <= 1e-9 * std::max(1.0, sig[0])) return;
      Vec z = ss.matrixV().col(r - 1);
      try_dir(z);
      try_dir(-z);
    });
  }
  for (int i = r; i < n; ++i) {
    Vec b = svd.matrixU().col(i);
    out.push_back(b);
    out.push_back(-b);
  }
  return PolyCone(n, out);
}

PolyCone intersect(const PolyCone& a, const PolyCone& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "intersect: cone dimensions differ");
  std::vector<Vec> g = dual_cone(a).generators();
  PolyCone db = dual_cone(b);
  for (const auto& v : db.generators()) g.push_back(v);
  return dual_cone(PolyCone(a.dim(), g));
}

PolyCone tangent_cone(const ConvexBody& k, const Vec& q) {
  require_dim(q, k.dim(), "tangent_cone");
  if (!contains(k, q, kPointTol * std::max(1.0, k.scale()))) {
    fail(ErrorKind::InvalidInput, "tangent_cone: point is not in the body");
  }
  std::vector<Vec> g;
  for (const auto& v : k.vertices()) {
    Vec d = v - q;
    if (d.norm() > kPointTol) g.push_back(d);
  }
  return PolyCone(k.dim(), g);
}

PolyCone normal_cone(const ConvexBody& k, const Vec& q) {
  return negate(dual_cone(tangent_cone(k, q)));
}

bool in_normal_cone(const ConvexBody& k, const Vec& q, const Vec& x, double tol) {
  require_dim(x, k.dim(), "in_normal_cone");
  const double nx = x.norm();
  if (nx == 0.0) return true;
  const Vec d = x / nx;
  for (const auto& v : k.vertices()) {
    Vec e = v - q;
    if (d.dot(e) > tol * std::max(1.0, e.norm())) return false;
  }
  return true;
}

double angle_to_cone(const PolyCone& c, const Vec& x) {
  Vec u = x.normalized();
  if (c.is_zero()) return kPi / 2;
  return std::acos(std::clamp(c.project(u).norm(), 0.0, 1.0));
}

std::vector<Arc> arcs(const PolyCone& c) {
  if (c.dim() != 2) fail(ErrorKind::DimensionMismatch, "arcs: cone is not planar");
  const auto& g = c.generators();
  if (g.empty()) return {};
  std::vector<double> ang;
  for (const auto& v : g) ang.push_back(std::atan2(v[1], v[0]));
  std::sort(ang.begin(), ang.end());
  if (ang.size() == 1) return {{ang[0], ang[0]}};

  std::vector<double> gaps(ang.size());
  for (std::size_t i = 0; i + 1 < ang.size(); ++i) gaps[i] = ang[i + 1] - ang[i];
  gaps.back() = ang.front() + kTwoPi - ang.back();
  auto kmax = static_cast<std::size_t>(std::max_element(gaps.begin(), gaps.end()) - gaps.begin());
  const double gmax = gaps[kmax];
  if (gmax < kPi - 1e-12) return {{-kPi, kPi}};
  auto wide = std::count_if(gaps.begin(), gaps.end(), [](double x) { return x >= kPi - 1e-12; });
  if (wide >= 2) {
    std::vector<Arc> out;
    for (double t : ang) out.push_back({t, t});
    return out;
  }
  double a = ang[(kmax + 1) % ang.size()];
  double b = ang[kmax];
  if (b < a) b += kTwoPi;
  return {{a, b}};
}

std::vector<Arc> intersect_arcs(const std::vector<Arc>& x, const std::vector<Arc>& y) {
  std::vector<Arc> out;
  for (const auto& p : x) {
    if (p.length() >= kTwoPi - 1e-15) {
      out.insert(out.end(), y.begin(), y.end());
      continue;
    }
    for (const auto& q : y) {
      if (q.length() >= kTwoPi - 1e-15) {
        out.push_back(p);
        continue;
      }
      for (int k = -1; k <= 1; ++k) {
        double lo = std::max(p.a, q.a + kTwoPi * k);
        double hi = std::min(p.b, q.b + kTwoPi * k);
        if (lo <= hi) out.push_back({lo, hi});
      }
    }
  }
  return out;
}

double arc_integral_dot(const Arc& arc, const Vec& u) {
  return u[0] * (std::sin(arc.b) - std::sin(arc.a)) + u[1] * (std::cos(arc.a) - std::cos(arc.b));
}

Vec arc_integral_theta(const Arc& arc) {
  return vec({std::sin(arc.b) - std::sin(arc.a), std::cos(arc.a) - std::cos(arc.b)});
}

bool CircularCone::contains(const Vec& x, double tol) const {
  require_dim(x, static_cast<int>(axis.size()), "CircularCone::contains");
  double nx = x.norm();
  if (nx == 0.0) return true;
  return x.dot(axis) / nx >= std::cos(opening) - tol;
}

CircularCone CircularCone::dual() const {
  if (opening > kPi / 2) fail(ErrorKind::InvalidInput, "CircularCone::dual: opening exceeds pi/2");
  return {axis, kPi / 2 - opening};
}

CircularCone circular_cone(const Vec& axis, double opening) {
  if (!(axis.norm() > 0)) fail(ErrorKind::InvalidInput, "circular_cone: zero axis");
  if (!(opening >= 0 && opening <= kPi)) fail(ErrorKind::InvalidInput, "circular_cone: opening outside [0, pi]");
  return {axis.normalized(), opening};
}

ConvexBody cap_body(const ConvexBody& k, const Vec& p) {
  require_dim(p, k.dim(), "cap_body");
  if (contains(k, p, 0.0)) return k;
  std::vector<Vec> pts = k.vertices();
  pts.push_back(p);
  return hull(pts);
}

double cap_support(const ConvexBody& k, const Vec& p, const Vec& x) {
  require_dim(p, k.dim(), "cap_support");
  require_dim(x, k.dim(), "cap_support");
  // x lies in N_p iff <x, v - p> <= 0 for every vertex v of K.
  const double hk = support(k, x);
  const double xp = x.dot(p);
  return hk - xp <= 0.0 ? xp : hk;
}

double sector_integral_exact(int n, double delta) {
  if (n < 2) fail(ErrorKind::InvalidInput, "sector_integral_exact: n must be >= 2");
  if (!(delta > 0 && delta <= kPi / 2)) fail(ErrorKind::InvalidInput, "sector_integral_exact: delta outside (0, pi/2]");
  return omega(n - 1) / (n - 1) * std::pow(std::sin(delta), n - 1);
}

double sector_integral_lower_bound(int n, double alpha) {
  if (n < 2) fail(ErrorKind::InvalidInput, "sector_integral_lower_bound: n must be >= 2");
  if (!(alpha > 0 && alpha < kPi)) fail(ErrorKind::InvalidInput, "sector_integral_lower_bound: alpha outside (0, pi)");
  return omega(n - 1) / (n - 1) * std::pow(std::sin(alpha / 4), n);
}

double angular_hausdorff(const PolyCone& a, const PolyCone& b, std::size_t probes, std::uint64_t seed) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "angular_hausdorff: cone dimensions differ");
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return kPi / 2;
  if (a.dim() == 1) {
    return a.generators().size() == b.generators().size() &&
                   (a.generators().size() == 2 || a.generators()[0][0] == b.generators()[0][0])
               ? 0.0
               : kPi;
  }
  if (a.dim() == 2) {
    auto aa = arcs(a), bb = arcs(b);
    return std::max(directed_arc_hausdorff(aa, bb), directed_arc_hausdorff(bb, aa));
  }
  SphereGrid grid = make_grid(a.dim(), probes, seed);
  double d = 0.0;
  for (const auto& x : section_samples(a, grid)) d = std::max(d, angle_to_cone(b, x));
  for (const auto& x : section_samples(b, grid)) d = std::max(d, angle_to_cone(a, x));
  return d;
}

LimitReport normal_cone_limit_report(const ConvexBody& k, const Vec& p0, const Vec& u,
                                     const std::vector<double>& eps_list, std::size_t probes,
                                     std::uint64_t seed) {
  require_dim(p0, k.dim(), "normal_cone_limit_report");
  require_dim(u, k.dim(), "normal_cone_limit_report");
  if (!(u.norm() > 0)) fail(ErrorKind::InvalidInput, "normal_cone_limit_report: zero direction");
  if (!on_ambient_boundary(k, p0)) {
    fail(ErrorKind::PreconditionViolated, "normal_cone_limit_report: p0 is not on the boundary");
  }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
      fail(ErrorKind::InvalidInput, "normal_cone_limit_report: eps list must be positive and decreasing");
    }
  }
  if (tangent_cone(k, p0).contains(u)) {
    fail(ErrorKind::PreconditionViolated, "normal_cone_limit_report: u lies in the tangent cone at p0");
  }

  LimitReport rep{intersect(normal_cone(k, p0), half_space(u)), {}, true, true, 0.0};
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (double eps : eps_list) {
    LimitStep st;
    st.eps = eps;
    st.p_eps = p0 + eps * u;
    PolyCone ne = normal_cone(cap_body(k, st.p_eps), st.p_eps);

    st.upper_ok = true;
    const auto& g = ne.generators();
    const std::size_t nprobe = g.empty() ? 0 : std::min<std::size_t>(probes, 1000);
    for (const auto& v : g) {
      if (v.dot(u) < -1e-9) st.upper_ok = false;
    }
    for (std::size_t t = 0; t < nprobe; ++t) {
      Vec x = Vec::Zero(k.dim());
      for (const auto& v : g) x += expo(rng) * v;
      if (x.norm() > 0 && x.normalized().dot(u) < -1e-9) st.upper_ok = false;
    }
    st.lower_ok = std::all_of(rep.limit.generators().begin(), rep.limit.generators().end(),
                              [&](const Vec& v) { return ne.contains(v); });
    st.metric = angular_hausdorff(ne, rep.limit, probes, seed);
    if (!rep.steps.empty() && st.metric > rep.steps.back().metric + 1e-12) rep.metric_decreasing = false;
    rep.sandwich_ok = rep.sandwich_ok && st.upper_ok && st.lower_ok;
    rep.steps.push_back(st);
  }
  if (!rep.steps.empty()) rep.final_metric = rep.steps.back().metric;
  return rep;
}

}  // namespace dg
