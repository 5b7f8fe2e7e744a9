#include "descent_geom/fixtures.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>

using namespace dg;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexBody disk(double r, int m = 256) { return regular_polygon(vec({0, 0}), r, m); }

// Random polygon shrunk by cutting off a random vertex neighbourhood at each step.
std::vector<ConvexBody> clipped_chain(std::mt19937_64& rng, int count) {
  std::vector<ConvexBody> out{dgt::random_body(rng, 2, 30, 2.0)};
  std::uniform_real_distribution<double> u(0.2, 0.6);
  while (static_cast<int>(out.size()) < count) {
    const auto& v = out.back().vertices();
    std::size_t i = rng() % v.size();
    const Vec& prev = v[(i + v.size() - 1) % v.size()];
    const Vec& next = v[(i + 1) % v.size()];
    std::vector<Vec> pts;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != i) pts.push_back(v[j]);
    }
    double t = u(rng);
    pts.push_back(v[i] + t * (prev - v[i]));
    pts.push_back(v[i] + t * (next - v[i]));
    out.push_back(hull(pts));
  }
  return out;
}

}  // namespace

TEST(Stratification, ConcentricDisksInAnyOrder) {
  auto s = validate_stratification({disk(2), disk(0.5), disk(1)});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(diameter(s.min()), 1.0, 1e-3);
  EXPECT_NEAR(diameter(s.max()), 4.0, 1e-3);
  EXPECT_FALSE(s.has_params());
}

TEST(Stratification, NotAChainNamesTheCallerIndices) {
  auto a = dgt::box(vec({0, 0}), vec({2, 2}));
  auto b = dgt::box(vec({1, 1}), vec({3, 3}));
  auto big = dgt::box(vec({-5, -5}), vec({5, 5}));
  try {
    validate_stratification({big, a, b});
    FAIL();
  } catch (const NotAChainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAChain);
    std::set<std::size_t> got{e.first(), e.second()};
    EXPECT_EQ(got, (std::set<std::size_t>{1, 2}));
  }
}

TEST(Stratification, IdenticalBodiesAreDegenerate) {
  try {
    validate_stratification({disk(1), disk(1)});
    FAIL();
  } catch (const GeomError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
  }
}

TEST(Stratification, RandomClippedChainsValidate) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    auto chain = clipped_chain(rng, 20);
    std::shuffle(chain.begin(), chain.end(), rng);
    auto s = validate_stratification(chain);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) EXPECT_TRUE(includes(s.bodies[i + 1], s.bodies[i], 1e-9));
  }
}

TEST(Stratification, LowerDimensionalMinimumAllowed) {
  auto seg = hull(std::vector<Vec>{vec({-0.5, 0}), vec({0.5, 0})});
  auto s = validate_stratification({disk(1), seg});
  EXPECT_EQ(s.min().affine_dim(), 1);
}

TEST(Interpolate, DisksAndEndpoints) {
  auto k1 = disk(1), k2 = disk(2);
  auto mid = interpolate(k1, k2, 0.5);
  // Offset arcs are circumscribed 32-gons with offset radius 0.5.
  const double sag = 0.5 * (1 / std::cos(kPi / 32) - 1);
  for (const auto& v : mid.vertices()) {
    EXPECT_LE(v.norm(), 1.5 + sag + 1e-9);
    EXPECT_GE(v.norm(), 1.5 * std::cos(kPi / 32) - 1e-3);
  }
  EXPECT_NEAR(mean_width_exact2d(mid), 3.0, 2e-2);
  EXPECT_EQ(interpolate(k1, k2, 0.0), k1);
  EXPECT_LT(hausdorff(interpolate(k1, k2, 1.0), k2), 1e-9);
  EXPECT_THROW(interpolate(k2, k1, 0.5), GeomError);
}

TEST(Interpolate, RoundedSquareAgainstLattice) {
  auto k1 = dgt::box(vec({-0.5, -0.5}), vec({0.5, 0.5}));
  auto k2 = dgt::box(vec({-1.5, -1.5}), vec({1.5, 1.5}));
  const double r = 0.5 * hausdorff(k1, k2);
  auto a = interpolate(k1, k2, 0.5);
  // Exact set: points of k2 within r of k1. The 32-gon circumscribes each
  // arc, so the sagitta bounds the disagreement band.
  const double band = r * (1 / std::cos(kPi / 32) - 1) + 1e-9;
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      Vec p = vec({-1.6 + 3.2 * (i + 0.5) / 200, -1.6 + 3.2 * (j + 0.5) / 200});
      double dx = std::max(std::abs(p[0]) - 0.5, 0.0), dy = std::max(std::abs(p[1]) - 0.5, 0.0);
      double dist = std::hypot(dx, dy);
      bool exact = dist <= r && std::abs(p[0]) <= 1.5 && std::abs(p[1]) <= 1.5;
      bool got = contains(a, p, 1e-12);
      if (exact && !got) ++mismatches;
      if (!exact && got && dist > r + band) ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(Interpolate, MonotoneInFraction) {
  std::mt19937_64 rng(3);
  auto k2 = dgt::random_body(rng, 2, 20, 2.0);
  auto k1 = scaled(k2, centroid(k2), 0.3);
  double prev = mean_width_exact2d(k1);
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    auto a = interpolate(k1, k2, f);
    EXPECT_TRUE(includes(a, k1, 1e-9));
    EXPECT_TRUE(includes(k2, a, 1e-9));
    double w = mean_width_exact2d(a);
    EXPECT_GT(w, prev);
    prev = w;
  }
}

TEST(Interpolate, ThreeDimensionalBoxes) {
  auto k1 = dgt::box(vec({-0.5, -0.5, -0.5}), vec({0.5, 0.5, 0.5}));
  auto k2 = dgt::box(vec({-1, -1, -1}), vec({1, 1, 1}));
  auto a = interpolate(k1, k2, 0.5);
  EXPECT_TRUE(includes(a, k1, 1e-9));
  EXPECT_TRUE(includes(k2, a, 1e-6));
  // Face centres move out by r = 0.5 * 0.5 * sqrt(3) capped by k2.
  const double r = 0.25 * std::sqrt(3.0);
  EXPECT_NEAR(support(a, vec({1, 0, 0})), std::min(0.5 + r, 1.0), 2e-2);
}

TEST(Complete, ConcentricDisks) {
  auto g = make_grid(2, 16);
  auto s = validate_stratification({disk(1, 64), disk(2, 64)});
  // w = 2 r, so the span is 2 and h = 0.1 needs 20 steps.
  auto f = complete(s, 0.1, g);
  ASSERT_EQ(f.size(), 21u);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(f.params()[i], mean_width_exact2d(f.bodies()[i]), 1e-9);
    double r = support(f.bodies()[i], vec({1, 0}));
    EXPECT_NEAR(2 * r, f.params()[i], 2e-2);
  }
  EXPECT_TRUE(is_connected(f));
}

TEST(Complete, SquareInSquareCoarse) {
  auto g = make_grid(2, 16);
  auto k1 = dgt::box(vec({-0.5, -0.5}), vec({0.5, 0.5}));
  auto k2 = dgt::box(vec({-1.5, -1.5}), vec({1.5, 1.5}));
  const double dw = mean_width_exact2d(k2) - mean_width_exact2d(k1);
  auto f = complete(validate_stratification({k1, k2}), dw / 4, g);
  ASSERT_EQ(f.size(), 5u);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(f.params()[i], mean_width_exact2d(k1) + i * dw / 4, 1e-3);
    EXPECT_NEAR(f.params()[i], mean_width_exact2d(f.bodies()[i]), 1e-9);
    if (i + 1 < f.size()) EXPECT_TRUE(includes(f.bodies()[i + 1], f.bodies()[i], 1e-9));
  }
}

TEST(Complete, DenseFamilyUnchanged) {
  auto dense = disk_family(0.5, 1.0, 10);
  auto f = complete(dense.strat, 1.0, make_grid(2, 16));
  ASSERT_EQ(f.size(), dense.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f.bodies()[i], dense.bodies()[i]);
}

TEST(Complete, InvariantsOnRandomFamilies) {
  for (std::uint64_t seed : {1, 2, 3}) {
    Family f = random_family_2d(seed, 3, 64);
    EXPECT_TRUE(is_connected(f));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      const auto& a = f.bodies()[i];
      const auto& b = f.bodies()[i + 1];
      EXPECT_TRUE(includes(b, a, 1e-9));
      EXPECT_GT(hausdorff(a, b), kPointTol);
      EXPECT_NEAR(f.params()[i], mean_width_exact2d(a), 1e-9);
      EXPECT_LE(f.params()[i + 1] - f.params()[i], f.h * (1 + 1e-6));
      auto wd = width_distance_bounds(a, b, make_grid(2, 16));
      EXPECT_TRUE(wd.lower_ok && wd.upper_ok);
    }
  }
}

TEST(Connected, AnnulusGapDetected) {
  Stratification s = validate_stratification({disk(1), disk(2)}, {2.0, 2.001});
  EXPECT_FALSE(is_connected(Family{s, 0.01}));
  EXPECT_TRUE(is_connected(disk_family(0.0, 1.0, 20)));
}

TEST(FamilyDistance, IdentityAndOffset) {
  auto f = disk_family(0.5, 1.0, 10, 128);
  EXPECT_EQ(family_distance(f, f), 0.0);
  // Same mean-width grid, radii shifted by 0.1 inside each member.
  std::vector<ConvexBody> shifted;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double r = support(f.bodies()[i], vec({1, 0}));
    shifted.push_back(regular_polygon(vec({0, 0}), r + 0.1, 128));
  }
  Family g{validate_stratification(shifted, f.params()), f.h};
  EXPECT_NEAR(family_distance(f, g), 0.1, 1e-12);
  Family other = disk_family(0.5, 2.0, 10);
  EXPECT_THROW(family_distance(f, other), GeomError);
}

TEST(Bracket, FindsInnerAndOuter) {
  auto f = disk_family(0.1, 1.0, 9, 64);
  auto b = bracket(f, regular_polygon(vec({0, 0}), 0.45, 64));
  ASSERT_TRUE(b.inner && b.outer);
  EXPECT_EQ(*b.inner, 3u);
  EXPECT_EQ(*b.outer, 4u);
  auto none = bracket(f, regular_polygon(vec({0, 0}), 5, 64));
  EXPECT_FALSE(none.outer);
  EXPECT_EQ(*none.inner, 9u);
}

TEST(BodyAt, HitsGridAndInterpolates) {
  auto f = disk_family(0.5, 1.0, 5);
  EXPECT_EQ(body_at(f, f.params()[2]), f.bodies()[2]);
  auto mid = body_at(f, 0.5 * (f.params()[2] + f.params()[3]));
  EXPECT_TRUE(includes(mid, f.bodies()[2], 1e-9));
  EXPECT_TRUE(includes(f.bodies()[3], mid, 1e-9));
  EXPECT_THROW(body_at(f, f.w_max() + 1), GeomError);
}
