#include "descent_geom/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dg {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec> ball_points(std::mt19937_64& rng, int n, int m, double r) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec> pts;
  for (int i = 0; i < m; ++i) {
    Vec p(n);
    for (int k = 0; k < n; ++k) p[k] = g(rng);
    p *= r * std::pow(u(rng), 1.0 / n) / p.norm();
    pts.push_back(p);
  }
  return pts;
}

Family family_from(std::vector<ConvexBody> bodies, std::vector<double> params) {
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < params.size(); ++i) h = std::max(h, params[i + 1] - params[i]);
  return Family{validate_stratification(bodies, params), h};
}

struct Staircase {
  std::vector<double> x;
  std::vector<double> g;
};

Staircase staircase(int level) {
  if (level < 0 || level > 20) fail(ErrorKind::InvalidInput, "cantor: level outside [0, 20]");
  Staircase s;
  const std::size_t count = std::size_t{1} << level;
  const double len = std::pow(3.0, -level);
  for (std::size_t k = 0; k < count; ++k) {
    double a = 0.0, scale = 1.0;
    for (int i = level - 1; i >= 0; --i) {
      scale /= 3.0;
      if ((k >> i) & 1) a += 2.0 * scale;
    }
    s.x.push_back(a);
    s.g.push_back(static_cast<double>(k) / static_cast<double>(count));
    s.x.push_back(a + len);
    s.g.push_back(static_cast<double>(k + 1) / static_cast<double>(count));
  }
  return s;
}

}  // namespace

Family disk_family(double r0, double r1, std::size_t levels, int sides) {
  if (!(r1 > r0) || r0 < 0 || levels < 1) fail(ErrorKind::InvalidInput, "disk_family: need 0 <= r0 < r1, levels >= 1");
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  for (std::size_t j = 0; j <= levels; ++j) {
    double r = r0 + (r1 - r0) * static_cast<double>(j) / static_cast<double>(levels);
    if (r == 0.0) {
      bodies.push_back(hull(std::vector<Vec>{vec({0, 0})}));
    } else {
      bodies.push_back(regular_polygon(vec({0, 0}), r, sides));
    }
    params.push_back(mean_width_exact2d(bodies.back()));
  }
  return family_from(std::move(bodies), std::move(params));
}

Stratification rotated_squares(int levels) {
  std::vector<ConvexBody> bodies;
  for (int k = 0; k < levels; ++k) {
    double side = std::pow(1.5, k);
    bodies.push_back(regular_polygon(vec({0, 0}), side / std::sqrt(2.0), 4, kPi / 4 + k * kPi / 12));
  }
  return validate_stratification(bodies);
}

Family rotated_squares_family(double h, int levels) {
  return complete(rotated_squares(levels), h, make_grid(2, 16));
}

Family random_family_2d(std::uint64_t seed, int levels, std::size_t n_steps) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> pts = ball_points(rng, 2, 6, 0.5);
  std::vector<ConvexBody> bodies{hull(pts)};
  for (int l = 1; l <= levels; ++l) {
    auto extra = ball_points(rng, 2, 4, 0.5 + 0.5 * l);
    for (auto& e : extra) e *= (0.5 + 0.5 * l) / std::max(e.norm(), 1e-12);
    pts.insert(pts.end(), extra.begin(), extra.end());
    bodies.push_back(hull(pts));
  }
  Stratification s = validate_stratification(bodies);
  const double span = mean_width_exact2d(s.max()) - mean_width_exact2d(s.min());
  return complete(s, span / static_cast<double>(n_steps), make_grid(2, 16));
}

Family homothetic_family(std::uint64_t seed, int n, std::size_t n_steps) {
  std::mt19937_64 rng(seed);
  ConvexBody base = hull(ball_points(rng, n, 4 * n + 4, 1.0));
  const Vec c = centroid(base);
  const double w = n <= 2 ? mean_width_exact2d(base) : mean_width_quadrature(base, make_grid(n, kDefaultGridSize, 5));
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  for (std::size_t j = 0; j <= n_steps; ++j) {
    double f = 1.0 + static_cast<double>(j) / static_cast<double>(n_steps);
    bodies.push_back(scaled(base, c, f));
    params.push_back(f * w);
  }
  return family_from(std::move(bodies), std::move(params));
}

Vec random_boundary_point(const ConvexBody& k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Vec c = centroid(k);
  Vec u(k.dim());
  for (int i = 0; i < k.dim(); ++i) u[i] = g(rng);
  u.normalize();
  double lo = 0.0, hi = diameter(k) + 1.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (contains(k, c + mid * u, 0.0) ? lo : hi) = mid;
  }
  return c + lo * u;
}

Polyline cantor_graph(int level) {
  Staircase s = staircase(level);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < s.x.size(); ++i) pts.push_back(vec({s.x[i], s.g[i]}));
  return Polyline(pts);
}

Stratification cantor_family(int level) {
  Staircase s = staircase(level);
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  std::vector<Vec> pts{vec({0, 1})};
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (i > 0 && s.x[i] - s.x[i - 1] <= kPointTol) continue;
    pts.push_back(vec({s.x[i], s.g[i]}));
    std::vector<Vec> body = pts;
    body.push_back(vec({s.x[i], 1.0}));
    bodies.push_back(hull(body));
    params.push_back(s.x[i]);
    pts = bodies.back().vertices();
  }
  return validate_stratification(bodies, params);
}

CantorDisks cantor_disks(int level, int sides) {
  Staircase s = staircase(level);
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (i > 0 && s.x[i] - s.x[i - 1] <= kPointTol) continue;
    double r = 0.5 * (s.g[i] + s.x[i]);
    if (r == 0.0) {
      bodies.push_back(hull(std::vector<Vec>{vec({0, 0})}));
    } else {
      bodies.push_back(regular_polygon(vec({0, 0}), r, sides));
    }
    params.push_back(mean_width_exact2d(bodies.back()));
  }
  return {family_from(std::move(bodies), std::move(params)), Polyline({vec({0, 0}), vec({1, 0})})};
}

StallExample stall_example(int disc_levels, int cyl_levels, int ring, int beta_levels) {
  if (disc_levels < 2 || cyl_levels < 1 || ring < 3 || beta_levels < 3) {
    fail(ErrorKind::InvalidInput, "stall_example: resolution too small");
  }
  std::vector<ConvexBody> bodies;
  std::vector<double> params;
  for (int j = 0; j <= disc_levels; ++j) {
    double t = static_cast<double>(j) / disc_levels;
    std::vector<Vec> pts;
    if (j == 0) {
      pts.push_back(vec({0, 0, 0}));
    } else {
      for (int i = 0; i < ring; ++i) {
        double a = 2.0 * kPi * i / ring;
        pts.push_back(vec({t * std::cos(a), t * std::sin(a), 0.0}));
      }
    }
    bodies.push_back(hull(pts));
    params.push_back(t);
  }
  for (int j = 1; j <= cyl_levels; ++j) {
    double t = 1.0 + static_cast<double>(j) / cyl_levels;
    std::vector<Vec> pts;
    for (int b = 0; b < beta_levels; ++b) {
      double beta = -kPi / 2 + kPi * b / (beta_levels - 1);
      double rho = 1.0 + (t - 1.0) * std::cos(beta);
      double z = (t - 1.0) * std::sin(beta);
      for (int i = 0; i < ring; ++i) {
        double a = 2.0 * kPi * i / ring;
        pts.push_back(vec({rho * std::cos(a), rho * std::sin(a), z}));
      }
    }
    bodies.push_back(hull(pts));
    params.push_back(t);
  }
  return {validate_stratification(bodies, params), vec({0.5, 0.0, 1.0}),
          Polyline({vec({0, 0, 0}), vec({0.5, 0, 0}), vec({0.5, 0, 1})})};
}

Family stall_example_family(const StallExample& ex, const SphereGrid& grid) {
  std::vector<double> w;
  for (const auto& b : ex.strat.bodies) w.push_back(mean_width(b, grid));
  return family_from(ex.strat.bodies, std::move(w));
}

CapPair apex_cap_pair(int nu, double alpha) {
  if (nu < 1 || !(alpha > 0)) fail(ErrorKind::InvalidInput, "apex_cap_pair: need nu >= 1, alpha > 0");
  const double half = alpha / (2.0 * nu);
  ConvexBody inner = hull(std::vector<Vec>{vec({-half, 0}), vec({half, 0})});
  ConvexBody outer = hull(std::vector<Vec>{vec({-half, 0}), vec({half, 0}), vec({0, 1.0 / nu})});
  return {inner, outer};
}

Polyline log_spiral(double growth, double turns, std::size_t vertices) {
  if (vertices < 2) fail(ErrorKind::InvalidInput, "log_spiral: need two vertices");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < vertices; ++i) {
    double phi = 2.0 * kPi * turns * static_cast<double>(i) / static_cast<double>(vertices - 1);
    double r = std::exp(growth * phi);
    pts.push_back(vec({r * std::cos(phi), r * std::sin(phi)}));
  }
  return Polyline(pts);
}

Polyline half_circle(double d, std::size_t vertices) {
  if (vertices < 2) fail(ErrorKind::InvalidInput, "half_circle: need two vertices");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < vertices; ++i) {
    double phi = kPi * static_cast<double>(i) / static_cast<double>(vertices - 1);
    pts.push_back(vec({0.5 * d * std::cos(phi), 0.5 * d * std::sin(phi)}));
  }
  return Polyline(pts);
}

}  // namespace dg
