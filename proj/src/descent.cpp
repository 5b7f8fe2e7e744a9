#include "descent_geom/descent.hpp"

#include <algorithm>
#include <cmath>

namespace dg {

namespace {

double boundary_band(const ConvexBody& k) { return 1e-6 * std::max(diameter(k), 1e-300); }

double point_segment_distance(const Vec& y, const Vec& a, const Vec& b, Vec* nearest = nullptr) {
  Vec d = b - a;
  double dd = d.squaredNorm();
  double s = dd > 0 ? std::clamp((y - a).dot(d) / dd, 0.0, 1.0) : 0.0;
  Vec q = a + s * d;
  if (nearest) *nearest = q;
  return (y - q).norm();
}

std::vector<double> knot_params(const Stratification& strat) {
  if (strat.has_params()) return strat.params;
  std::vector<double> t(strat.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  return t;
}

Vec curve_at(const DescentCurve& c, double w) {
  const auto& p = c.knots.params;
  auto it = std::upper_bound(p.begin(), p.end(), w);
  if (it == p.begin()) return c.knot_points.front();
  if (it == p.end()) return c.knot_points.back();
  auto i = static_cast<std::size_t>(it - p.begin());
  double f = (w - p[i - 1]) / (p[i] - p[i - 1]);
  return c.knot_points[i - 1] + f * (c.knot_points[i] - c.knot_points[i - 1]);
}

DescentCurve descend(const Family& fam, const Vec& endpoint, const std::vector<ConvexBody>& bodies,
                     const std::vector<double>& params) {
  require_dim(endpoint, fam.dim(), "construct_descent");
  const ConvexBody& top = fam.bodies().back();
  if (!on_relative_boundary(top, endpoint, boundary_band(top))) {
    fail(ErrorKind::PreconditionViolated, "construct_descent: endpoint is not on the boundary of the largest member");
  }
  if (!is_connected(fam)) {
    fail(ErrorKind::PreconditionViolated, "construct_descent: family is not connected at its resolution");
  }
  const std::size_t m = bodies.size() - 1;
  std::vector<Vec> p(m + 1);
  p[m] = endpoint;
  for (std::size_t j = m; j > 0; --j) p[j - 1] = project(bodies[j - 1], p[j]);
  Stratification knots;
  knots.bodies = bodies;
  knots.params = params;
  return {Polyline(p), std::move(knots), std::move(p)};
}

}  // namespace

DescentCurve construct_descent(const Family& fam, const Vec& endpoint, int m) {
  if (m < 2) fail(ErrorKind::InvalidInput, "construct_descent: need m >= 2");
  const auto& p = fam.params();
  const double w0 = fam.w_min(), w1 = fam.w_max();
  const double near = 1e-5 * (w1 - w0);
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  for (int j = 0; j <= m; ++j) {
    double w = j == m ? w1 : w0 + (w1 - w0) * j / m;
    auto it = std::lower_bound(p.begin(), p.end(), w - near);
    if (it != p.end() && *it <= w + near) {
      bodies.push_back(fam.bodies()[static_cast<std::size_t>(it - p.begin())]);
      params.push_back(*it);
    } else {
      bodies.push_back(body_at(fam, w));
      params.push_back(w);
    }
  }
  return descend(fam, endpoint, bodies, params);
}

DescentCurve construct_descent(const Family& fam, const Vec& endpoint) {
  return descend(fam, endpoint, fam.bodies(), fam.params());
}

double uniform_distance(const DescentCurve& a, const DescentCurve& b) {
  std::vector<double> ws = a.knots.params;
  ws.insert(ws.end(), b.knots.params.begin(), b.knots.params.end());
  double d = 0.0;
  for (double w : ws) d = std::max(d, (curve_at(a, w) - curve_at(b, w)).norm());
  return d;
}

Alignment align(const Polyline& gamma, const ConvexBody& q, double tol) {
  const auto& p = gamma.points();
  const double band = tol * std::max(1.0, q.scale());
  const auto arc = gamma.arc_lengths();
  Alignment al;
  std::optional<std::size_t> last;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (contains(q, p[i], band)) {
      last = i;
      break;
    }
  }
  if (!last) {
    for (std::size_t i = p.size() - 1; i-- > 0;) {
      if (auto r = clip_segment(q, p[i], p[i + 1], tol)) {
        al.segment = i;
        al.s = r->second;
        al.found = true;
        break;
      }
    }
    if (!al.found) return al;
  } else if (*last + 1 == p.size()) {
    al.segment = p.size() >= 2 ? p.size() - 2 : 0;
    al.s = p.size() >= 2 ? 1.0 : 0.0;
    al.found = true;
  } else {
    al.segment = *last;
    auto r = clip_segment(q, p[*last], p[*last + 1], 0.0);
    al.s = r ? r->second : 0.0;
    al.found = true;
  }
  if (p.size() == 1) {
    al.point = p[0];
    al.arc = 0.0;
    return al;
  }
  const Vec& a = p[al.segment];
  const Vec& b = p[al.segment + 1];
  al.point = a + al.s * (b - a);
  if (al.s > 0.0 && al.s < 1.0) al.point = project(q, al.point);
  al.arc = arc[al.segment] + al.s * (b - a).norm();
  return al;
}

EcResult is_expanding_couple(const Polyline& gamma, const Stratification& strat, double tol) {
  EcResult r;
  const auto& p = gamma.points();
  const std::size_t c = p.size();
  const ConvexBody& top = strat.max();

  for (const auto& x : p) {
    if (!contains(top, x, tol * std::max(1.0, top.scale()))) r.enclosed = false;
  }
  r.ends_on_max = on_relative_boundary(top, gamma.back(), boundary_band(top));

  struct Cand {
    std::size_t seg;
    Vec x;
    bool aligned;
  };
  std::optional<EcWitness> aligned_w, end_w, any_w;
  double aligned_v = 0.0, end_v = 0.0, any_v = 0.0;

  for (std::size_t qi = 0; qi < strat.size(); ++qi) {
    const ConvexBody& q = strat.bodies[qi];
    Alignment al = align(gamma, q, tol);
    if (!al.found) {
      r.meets_all = false;
      if (!r.missed_body) r.missed_body = qi;
      continue;
    }
    ConvexBody inner = contracted(q, boundary_band(q));
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < c; ++i) {
      if (!contains(inner, p[i], 0.0)) cands.push_back({i, p[i], false});
    }
    if (c >= 2) cands.push_back({al.segment, al.point, true});

    for (const auto& y : q.vertices()) {
      // Suffix minima of the distance from y to the curve.
      std::vector<double> sufmin(c);
      std::vector<Vec> sufarg(c);
      sufmin[c - 1] = (p[c - 1] - y).norm();
      sufarg[c - 1] = p[c - 1];
      for (std::size_t i = c - 1; i-- > 0;) {
        Vec nearest;
        double d = point_segment_distance(y, p[i], p[i + 1], &nearest);
        if (d < sufmin[i + 1]) {
          sufmin[i] = d;
          sufarg[i] = nearest;
        } else {
          sufmin[i] = sufmin[i + 1];
          sufarg[i] = sufarg[i + 1];
        }
      }
      const double d_end = (gamma.back() - y).norm();
      for (const auto& cd : cands) {
        const double dxy = (cd.x - y).norm();
        if (cd.seg + 1 >= c && (cd.x - gamma.back()).norm() <= kPointTol) continue;
        double best;
        Vec arg;
        if (cd.seg + 1 < c) {
          best = point_segment_distance(y, cd.x, p[cd.seg + 1], &arg);
          if (cd.seg + 1 < c && sufmin[cd.seg + 1] < best) {
            best = sufmin[cd.seg + 1];
            arg = sufarg[cd.seg + 1];
          }
        } else {
          best = d_end;
          arg = gamma.back();
        }
        if (cd.aligned && dxy - d_end > tol && dxy - d_end > aligned_v) {
          aligned_v = dxy - d_end;
          aligned_w = EcWitness{qi, cd.x, y, gamma.back(), dxy, d_end};
        }
        if (dxy - d_end > tol && dxy - d_end > end_v) {
          end_v = dxy - d_end;
          end_w = EcWitness{qi, cd.x, y, gamma.back(), dxy, d_end};
        }
        if (dxy - best > tol && dxy - best > any_v) {
          any_v = dxy - best;
          any_w = EcWitness{qi, cd.x, y, arg, dxy, best};
        }
      }
    }
  }
  r.witness = aligned_w ? aligned_w : end_w ? end_w : any_w;
  r.ok = r.meets_all && r.ends_on_max && r.enclosed && !r.witness;
  return r;
}

SdcResult is_viable_sdc(const Polyline& gamma, const Stratification& strat, double tol, double measure_tol) {
  SdcResult r;
  const auto t = knot_params(strat);
  const auto& p = gamma.points();
  for (std::size_t j = 0; j < strat.size(); ++j) {
    const ConvexBody& q = strat.bodies[j];
    Alignment al = align(gamma, q);
    if (!al.found) fail(ErrorKind::InvalidInput, "is_viable_sdc: member " + std::to_string(j) + " misses the curve");
    SdcKnot k;
    k.t = t[j];
    k.x = al.point;
    k.on_boundary = j == 0 || on_relative_boundary(q, al.point, boundary_band(q));
    // Outgoing direction at the aligned point.
    std::optional<Vec> d;
    if (p.size() >= 2) {
      std::size_t seg = al.s < 1.0 ? al.segment : al.segment + 1;
      if (seg + 1 < p.size()) d = (p[seg + 1] - p[seg]).normalized();
    }
    k.in_normal_cone = !d || in_normal_cone(q, al.point, *d, tol);
    const double gap = j + 1 < strat.size() ? t[j + 1] - t[j] : 0.0;
    if (!k.on_boundary) r.bad_measure_i += gap;
    if (!k.in_normal_cone) r.bad_measure_ii += gap;
    if ((!k.on_boundary || !k.in_normal_cone) && !r.witness) r.witness = k;
    r.knots.push_back(k);
  }
  const bool any_i = std::any_of(r.knots.begin(), r.knots.end(), [](const SdcKnot& k) { return !k.on_boundary; });
  const bool any_ii = std::any_of(r.knots.begin(), r.knots.end(), [](const SdcKnot& k) { return !k.in_normal_cone; });
  const bool ok_i = !any_i || (measure_tol > 0 && r.bad_measure_i <= measure_tol);
  const bool ok_ii = !any_ii || (measure_tol > 0 && r.bad_measure_ii <= measure_tol);
  r.ok = ok_i && ok_ii;
  return r;
}

JointParam joint_parametrization(const Polyline& gamma, const Stratification& strat, double tol) {
  JointParam jp;
  jp.w = knot_params(strat);
  for (const auto& q : strat.bodies) {
    Alignment al = align(gamma, q);
    if (!al.found) fail(ErrorKind::InvalidInput, "joint_parametrization: a member misses the curve");
    jp.s.push_back(al.arc);
    jp.z.push_back(al.point);
  }
  jp.tau.push_back(0.0);
  for (std::size_t j = 1; j < jp.w.size(); ++j) {
    double dw = jp.w[j] - jp.w[j - 1], ds = jp.s[j] - jp.s[j - 1];
    double dt = std::hypot(dw, ds);
    jp.tau.push_back(jp.tau.back() + dt);
    double sp = dt > 0 ? (jp.z[j] - jp.z[j - 1]).norm() / dt : 0.0;
    jp.speed.push_back(sp);
    jp.lipschitz_estimate = std::max(jp.lipschitz_estimate, sp);
  }
  jp.ok = jp.lipschitz_estimate <= 1.0 + tol;
  return jp;
}

StabilityResult stability_check(const Polyline& g1, const Polyline& g2, const Stratification& strat, double tol) {
  if (g1.dim() != g2.dim() || g1.dim() != strat.dim()) {
    fail(ErrorKind::InvalidInput, "stability_check: curves and family differ in dimension");
  }
  StabilityResult r;
  r.endpoint_distance = (g1.back() - g2.back()).norm();
  for (const auto& q : strat.bodies) {
    Alignment a = align(g1, q), b = align(g2, q);
    if (!a.found || !b.found) fail(ErrorKind::InvalidInput, "stability_check: a member misses a curve");
    r.knot_distance.push_back((a.point - b.point).norm());
  }
  for (std::size_t j = 0; j < r.knot_distance.size(); ++j) {
    r.max_violation = std::max(r.max_violation, r.knot_distance[j] - r.endpoint_distance);
    if (j + 1 < r.knot_distance.size()) {
      r.max_violation = std::max(r.max_violation, r.knot_distance[j] - r.knot_distance[j + 1]);
    }
  }
  r.max_violation = std::max(r.max_violation, 0.0);
  r.ok = r.max_violation <= tol;
  return r;
}

AnnulusResult annulus_length_check(const Polyline& gamma, const Stratification& strat, std::size_t k1_index,
                                   const SphereGrid& grid, double tol) {
  if (k1_index >= strat.size()) fail(ErrorKind::InvalidInput, "annulus_length_check: member index out of range");
  const ConvexBody& k1 = strat.bodies[k1_index];
  const ConvexBody& k2 = strat.max();
  const int n = strat.dim();
  AnnulusResult r;
  const auto& p = gamma.points();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double len = (p[i + 1] - p[i]).norm();
    double inside = 0.0;
    if (auto c = clip_segment(k1, p[i], p[i + 1], 1e-9)) inside = (c->second - c->first) * len;
    r.len_outside += std::max(0.0, len - inside);
  }
  r.dist12 = hausdorff(k1, k2);
  r.delta_w = mean_width(k2, grid) - mean_width(k1, grid);
  r.bound_i = 2.0 * c1(n) * r.dist12;
  const double c = 2.0 * c1(n) * std::pow(std::pow(diameter(k2), n - 1) / c0(n), 1.0 / n);
  r.bound_ii = c * std::pow(std::max(r.delta_w, 0.0), 1.0 / n);
  r.bound_i_ok = r.len_outside <= r.bound_i + tol;
  r.bound_ii_ok = r.len_outside <= r.bound_ii + tol;
  return r;
}

std::vector<std::size_t> boundary_multiplicity_violations(const Polyline& gamma, const Stratification& strat,
                                                          double cluster_tol) {
  std::vector<std::size_t> bad;
  for (std::size_t qi = 0; qi < strat.size(); ++qi) {
    const ConvexBody& q = strat.bodies[qi];
    std::vector<Vec> reps;
    for (const auto& x : gamma.points()) {
      if (!on_relative_boundary(q, x, boundary_band(q))) continue;
      bool merged = std::any_of(reps.begin(), reps.end(), [&](const Vec& r) { return (r - x).norm() <= cluster_tol; });
      if (!merged) reps.push_back(x);
    }
    if (reps.size() > 1) bad.push_back(qi);
  }
  return bad;
}

}  // namespace dg
