#include "descent_geom/mean_width.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace dg;
using dgt::polar;
using dgt::unit_square;

namespace {

constexpr double kPi = std::numbers::pi;

double midpoint_angle_integral(const std::function<double(double)>& f, int steps = 200000) {
  double s = 0.0, h = 2 * kPi / steps;
  for (int i = 0; i < steps; ++i) s += f((i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST(Sphere, OmegaValues) {
  EXPECT_NEAR(omega(1), 2.0, 1e-15);
  EXPECT_NEAR(omega(2), 2 * kPi, 1e-14);
  EXPECT_NEAR(omega(3), 4 * kPi, 1e-14);
  EXPECT_NEAR(omega(4), 2 * kPi * kPi, 1e-13);
}

TEST(Sphere, GridInvariants) {
  for (int n = 1; n <= 6; ++n) {
    auto g = make_grid(n, 5000, 9);
    EXPECT_NEAR(g.weights.sum(), omega(n), 1e-9);
    for (Eigen::Index i = 0; i < g.directions.cols(); ++i) {
      EXPECT_NEAR(g.directions.col(i).norm(), 1.0, 1e-12);
    }
    EXPECT_TRUE((g.weights.array() > 0).all());
  }
  auto a = make_grid(3, 1000, 4), b = make_grid(3, 1000, 4), c = make_grid(3, 1000, 5);
  EXPECT_EQ(a.directions, b.directions);
  EXPECT_NE(a.directions, c.directions);
}

TEST(MeanWidth, DiskSegmentSquare) {
  auto g2 = make_grid(2);
  // Regular m-gon of circumradius 1: perimeter 2 m sin(pi/m).
  const int m = 4096;
  EXPECT_NEAR(mean_width(regular_polygon(vec({0, 0}), 1, m), g2), 2 * m * std::sin(kPi / m) / kPi, 1e-12);
  EXPECT_NEAR(mean_width(regular_polygon(vec({0, 0}), 1, m), g2), 2.0, 1e-6);

  const double len = 1.7;
  auto seg = hull(std::vector<Vec>{vec({0.3, 0.1}), vec({0.3 + len, 0.1})});
  double oracle = midpoint_angle_integral([&](double t) { return len * std::abs(std::cos(t)); }) / (2 * kPi);
  EXPECT_NEAR(mean_width(seg, g2), oracle, 1e-9);
  EXPECT_NEAR(oracle, 2 * len / kPi, 1e-9);

  auto sq = dgt::box(vec({-1, -1}), vec({1, 1}));
  EXPECT_NEAR(mean_width(sq, g2), 8 / kPi, 1e-14);
  EXPECT_NEAR(mean_width_quadrature(sq, g2), 8 / kPi, 1e-3);
}

TEST(MeanWidth, CubeQuadrature) {
  auto cube = dgt::box(vec({0, 0, 0}), vec({1, 1, 1}));
  EXPECT_NEAR(mean_width(cube, make_grid(3)), 1.5, 1e-3);
  EXPECT_THROW(mean_width(cube, make_grid(2)), GeomError);
}

TEST(MeanWidth, ExactAgreesWithDeterministicGrid) {
  std::mt19937_64 rng(71);
  auto g = make_grid(2, 20000, 3);
  for (int i = 0; i < 30; ++i) {
    auto k = dgt::random_body(rng, 2, 12);
    EXPECT_NEAR(mean_width_exact2d(k), mean_width_quadrature(k, g), 1e-6);
  }
}

TEST(MeanWidth, TranslationInvariance) {
  std::mt19937_64 rng(73);
  auto g = make_grid(2);
  for (int i = 0; i < 20; ++i) {
    auto k = dgt::random_body(rng, 2, 10);
    Vec t = 5 * dgt::random_unit(rng, 2);
    EXPECT_NEAR(mean_width(translated(k, t), g), mean_width(k, g), 1e-12);
  }
}

TEST(MeanWidth, StrictMonotonicity) {
  std::mt19937_64 rng(79);
  auto g3 = make_grid(3);
  for (int i = 0; i < 10; ++i) {
    auto pts = dgt::random_points(rng, 3, 15);
    auto a = hull(pts);
    pts.push_back(1.5 * dgt::random_unit(rng, 3));
    auto b = hull(pts);
    auto bounds = width_distance_bounds(a, b, g3, 1e-3);
    EXPECT_GT(bounds.delta_w, 0.0);
    EXPECT_TRUE(bounds.lower_ok);
  }
}

TEST(MeanWidthRatio, SegmentAndEmbeddedSquare) {
  EXPECT_NEAR(mean_width_ratio(2, 1), kPi / 2, 1e-14);
  const double len = 2.3;
  auto seg = hull(std::vector<Vec>{vec({0, 0}), vec({len, 0})});
  EXPECT_NEAR(intrinsic_mean_width(seg), len, 1e-14);
  EXPECT_NEAR(intrinsic_mean_width(seg) / mean_width(seg, make_grid(2)), mean_width_ratio(2, 1), 1e-12);

  double r32 = (omega(3) / omega(2)) * (omega(3) / omega(4));
  EXPECT_NEAR(mean_width_ratio(3, 2), r32, 1e-14);
  auto sq = hull(std::vector<Vec>{vec({0, 0, 1}), vec({1, 0, 1}), vec({1, 1, 1}), vec({0, 1, 1})});
  double w3 = mean_width(sq, make_grid(3, 200000, 2));
  EXPECT_NEAR(intrinsic_mean_width(sq), 4 / kPi, 1e-14);
  EXPECT_NEAR(intrinsic_mean_width(sq) / w3, mean_width_ratio(3, 2), 1e-3);
  EXPECT_THROW(mean_width_ratio(2, 2), GeomError);
}

TEST(Constants, C0AndC1) {
  EXPECT_NEAR(c0(2), 1.0 / (2 * kPi), 1e-15);
  EXPECT_NEAR(c0(3), 0.25 * 2 * kPi / (2 * 4 * kPi), 1e-15);
  EXPECT_EQ(c1(2), kPi);
  EXPECT_NEAR(c1(3), 2 * std::pow(3.0, 1.5) * 4 * kPi / (2 * kPi), 1e-12);
}

TEST(FirstVariation, EdgeInteriorHasZeroFirstTerm) {
  auto fv = first_variation(unit_square(), vec({1, 0.5}), vec({1, 0}), 0.1, make_grid(2));
  EXPECT_EQ(fv.first_term, 0.0);
  // Oracle: two slanted edges of length sqrt(0.01 + 0.25) replace one of length 1.
  EXPECT_NEAR(fv.delta_w, (2 * std::sqrt(0.26) - 1) / kPi, 1e-14);
  EXPECT_GT(fv.remainder, 0.0);
}

TEST(FirstVariation, CornerRemainderIsSuperlinear) {
  Vec u = vec({1, 1}) / std::sqrt(2.0);
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    auto fv = first_variation(unit_square(), vec({1, 1}), u, eps, make_grid(2));
    // Oracle: first term (1/pi) eps * integral of cos over the quadrant
    // relative to u = sqrt 2 eps / pi.
    EXPECT_NEAR(fv.first_term, std::sqrt(2.0) * eps / kPi, 1e-14);
    double e = eps / std::sqrt(2.0);
    EXPECT_NEAR(fv.delta_w, (2 * std::sqrt(1 + 2 * e + 2 * e * e) - 2) / kPi, 1e-13);
    EXPECT_GE(fv.remainder, -1e-8);
    EXPECT_LT(fv.remainder / eps, prev);
    prev = fv.remainder / eps;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(FirstVariation, ThreeDimensionalCorner) {
  auto cube = dgt::box(vec({0, 0, 0}), vec({1, 1, 1}));
  Vec u = vec({1, 1, 1}) / std::sqrt(3.0);
  auto g = make_grid(3, 100000, 3);
  for (double eps : {0.1, 0.05}) {
    auto fv = first_variation(cube, vec({1, 1, 1}), u, eps, g);
    // Oracle: integral of <theta, u> over the positive octant is pi/(2 sqrt 3) * ... per axis pi/4.
    double octant = 3 * (kPi / 4) / std::sqrt(3.0);
    EXPECT_NEAR(fv.first_term, 2 / omega(3) * eps * octant, 2e-3 * eps);
    EXPECT_GE(fv.remainder, -2e-3 * eps);
  }
}

TEST(FirstVariation, Preconditions) {
  EXPECT_THROW(first_variation(unit_square(), vec({0.5, 0.5}), vec({1, 0}), 0.1, make_grid(2)), GeomError);
  EXPECT_THROW(first_variation(unit_square(), vec({1, 0.5}), vec({-1, 0}), 0.1, make_grid(2)), GeomError);
}

TEST(CapGradient, MatchesFiniteDifferences) {
  auto sq = unit_square();
  auto g = make_grid(2);
  Vec p = vec({2, 2});
  Vec grad = cap_gradient(sq, p, g);
  const double h = 1e-5;
  for (int i = 0; i < 2; ++i) {
    Vec e = Vec::Unit(2, i);
    double fd = (mean_width(cap_body(sq, p + h * e), g) - mean_width(cap_body(sq, p - h * e), g)) / (2 * h);
    EXPECT_NEAR(grad[i], fd, 1e-4 * std::abs(fd));
  }
}

TEST(CapGradient, ThreeDimensional) {
  auto cube = dgt::box(vec({0, 0, 0}), vec({1, 1, 1}));
  auto g = make_grid(3, 200000, 7);
  Vec p = vec({1.8, 1.5, 1.2});
  Vec grad = cap_gradient(cube, p, g);
  const double h = 1e-2;
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Unit(3, i);
    double fd = (mean_width(cap_body(cube, p + h * e), g) - mean_width(cap_body(cube, p - h * e), g)) / (2 * h);
    EXPECT_NEAR(grad[i], fd, 5e-3);
  }
}

TEST(WidthDistance, ConcentricDisks) {
  auto d1 = regular_polygon(vec({0, 0}), 1, 4096), d2 = regular_polygon(vec({0, 0}), 2, 4096);
  auto b = width_distance_bounds(d1, d2, make_grid(2));
  EXPECT_NEAR(b.delta_w, 2.0, 1e-6);
  EXPECT_NEAR(b.dist, 1.0, 1e-12);
  EXPECT_TRUE(b.lower_ok);
  EXPECT_TRUE(b.upper_ok);
  EXPECT_GT(b.delta_w, b.upper_literal);
}

TEST(WidthDistance, EqualBodies) {
  auto sq = unit_square();
  auto b = width_distance_bounds(sq, sq, make_grid(2));
  EXPECT_EQ(b.delta_w, 0.0);
  EXPECT_EQ(b.dist, 0.0);
  EXPECT_EQ(b.lhs_lower, 0.0);
  EXPECT_TRUE(b.lower_ok && b.upper_ok);
}

TEST(WidthDistance, SegmentAndApexClosedForm) {
  for (int nu = 1; nu <= 8; ++nu) {
    double alpha = nu * nu;
    double half = alpha / nu / 2;
    auto k1 = hull(std::vector<Vec>{vec({-half, 0}), vec({half, 0})});
    auto k2 = hull(std::vector<Vec>{vec({-half, 0}), vec({half, 0}), vec({0, 1.0 / nu})});
    auto b = width_distance_bounds(k1, k2, make_grid(2));
    EXPECT_NEAR(b.delta_w, (std::sqrt(4 + alpha * alpha) - alpha) / (kPi * nu), 1e-9);
    EXPECT_TRUE(b.lower_ok && b.upper_ok);
  }
}

TEST(WidthDistance, NotNested) {
  try {
    width_distance_bounds(translated(unit_square(), vec({2, 0})), unit_square(), make_grid(2));
    FAIL();
  } catch (const GeomError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
  }
}
