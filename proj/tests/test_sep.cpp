#include "corpus.hpp"
#include "descent_geom/fixtures.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace dg;

namespace {

constexpr double kPi = std::numbers::pi;

Polyline line(std::initializer_list<std::initializer_list<double>> pts) {
  std::vector<Vec> v;
  for (auto p : pts) v.push_back(vec(p));
  return Polyline(v);
}

}  // namespace

TEST(Polyline, CollapsesDuplicatesAndValidates) {
  auto p = line({{0, 0}, {0, 0}, {1, 0}, {1, 1e-12}, {1, 1}});
  EXPECT_EQ(p.size(), 3u);
  EXPECT_NEAR(p.length(), 2.0, 1e-15);
  EXPECT_THROW(Polyline(std::vector<Vec>{}), GeomError);
  EXPECT_THROW(Polyline({vec({0, 0}), vec({1, 0, 0})}), GeomError);
  EXPECT_THROW(Polyline({vec({0, 0}), vec({NAN, 0})}), GeomError);
  auto arc = line({{0, 0}, {3, 4}, {3, 5}}).arc_lengths();
  EXPECT_DOUBLE_EQ(arc[1], 5.0);
  EXPECT_DOUBLE_EQ(arc[2], 6.0);
}

TEST(IsSep, MonotoneStaircase) {
  EXPECT_TRUE(is_sep(line({{0, 0}, {1, 0}, {1, 1}, {2, 1}})).ok);
}

TEST(IsSep, BacktrackWitness) {
  auto r = is_sep(line({{0, 0}, {1, 0}, {0.5, 0}}));
  ASSERT_FALSE(r.ok);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(r.witness->y.isApprox(vec({0, 0})));
  EXPECT_TRUE(r.witness->a.isApprox(vec({1, 0})));
  EXPECT_TRUE(r.witness->d.isApprox(vec({-1, 0})));
}

TEST(IsSep, SegmentThatTurnsBackFailsAlthoughVerticesSpreadOut) {
  // Vertex distances from the origin grow (1, then 5.08) but the last
  // segment starts by moving toward it.
  auto p = line({{0, 0}, {1, 0}, {0.9, 5}});
  EXPECT_FALSE(is_sep(p).ok);
  EXPECT_FALSE(dgt::brute_force_sep(p.points()));
}

TEST(IsSep, SpiralAgreesWithBruteForce) {
  auto s = log_spiral(0.3, 2, 400);
  EXPECT_TRUE(is_sep(s).ok);
  EXPECT_TRUE(dgt::brute_force_sep(s.points()));
  // Slower growth turns back toward early points on the second turn.
  auto slow = log_spiral(0.2, 2, 400);
  EXPECT_FALSE(is_sep(slow).ok);
  EXPECT_FALSE(dgt::brute_force_sep(slow.points()));
}

TEST(IsSep, RandomCorpusAgreesWithBruteForce) {
  std::mt19937_64 rng(17);
  int sep = 0;
  for (int i = 0; i < 200; ++i) {
    auto pts = i % 2 ? dgt::random_monotone(rng, 1 + i % 3, 5 + i % 40) : dgt::random_perturbed(rng, 5 + i % 40);
    Polyline p(pts);
    bool a = is_sep(p).ok;
    EXPECT_EQ(a, dgt::brute_force_sep(p.points())) << "instance " << i;
    sep += a;
  }
  EXPECT_GT(sep, 100);
  EXPECT_LT(sep, 200);
}

TEST(IsSep, CantorStaircase) {
  auto c1 = cantor_graph(1);
  ASSERT_EQ(c1.size(), 4u);
  EXPECT_TRUE(c1.point(1).isApprox(vec({1.0 / 3, 0.5})));
  EXPECT_TRUE(c1.point(2).isApprox(vec({2.0 / 3, 0.5})));
  EXPECT_TRUE(is_sep(c1).ok);
  auto c8 = cantor_graph(8);
  EXPECT_EQ(c8.size(), 512u);
  EXPECT_TRUE(is_sep(c8).ok);
}

TEST(MeanwidthParam, SinglePointAndSegment) {
  auto g = make_grid(2, 64);
  EXPECT_EQ(meanwidth_param(line({{1, 2}}), g), std::vector<double>{0.0});
  const double len = 2.5;
  const int k = 11;
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(vec({len * i / (k - 1), 0.0}));
  auto w = meanwidth_param(Polyline(pts), g);
  for (int i = 0; i < k; ++i) EXPECT_NEAR(w[i], 2 * (i * len / (k - 1)) / kPi, 1e-12);
}

TEST(MeanwidthParam, SpiralStrictlyIncreasing) {
  auto w = meanwidth_param(log_spiral(0.3, 2, 400), make_grid(2, 64));
  for (std::size_t i = 1; i < w.size(); ++i) EXPECT_GT(w[i], w[i - 1]);
}

TEST(MeanwidthParam, RejectsNonSep) {
  try {
    meanwidth_param(line({{0, 0}, {1, 0}, {0.5, 0}}), make_grid(2, 64));
    FAIL();
  } catch (const GeomError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
  }
}

TEST(Lipschitz, SegmentHalfCircleSpiral) {
  auto g = make_grid(2, 64);
  auto seg = lipschitz_ratio(line({{0, 0}, {0.7, 0}, {2, 0}}), g);
  EXPECT_NEAR(seg.max_ratio, kPi / 2, 1e-12);
  EXPECT_EQ(seg.bound, kPi);
  EXPECT_TRUE(seg.ok);

  auto hc = lipschitz_ratio(half_circle(2.0, 200), g);
  EXPECT_LE(hc.max_ratio, kPi + 1e-2);
  EXPECT_EQ(hc.zero_steps, 0u);

  auto sp = lipschitz_ratio(log_spiral(0.3, 2, 400), g);
  EXPECT_LE(sp.max_ratio, kPi + 1e-2);
  RecordProperty("spiral_max_ratio", std::to_string(sp.max_ratio));
  // Regression value for the 400-vertex, growth 0.3 spiral.
  EXPECT_NEAR(sp.max_ratio, 3.0, 0.15);
}

TEST(LengthBound, SegmentAndHalfCircle) {
  auto g = make_grid(2, 64);
  auto seg = length_bound_check(line({{0, 0}, {3, 0}}), g);
  EXPECT_NEAR(seg.length, 3.0, 1e-15);
  EXPECT_NEAR(seg.bound, 6.0, 1e-12);
  EXPECT_TRUE(seg.bound_ok);

  const double d = 2.0;
  auto hc = half_circle(d, 400);
  auto b = length_bound_check(hc, g);
  EXPECT_NEAR(b.length, kPi * d / 2, 1e-4);
  // Half disk: perimeter pi d / 2 + d.
  EXPECT_NEAR(b.w_hull, (kPi * d / 2 + d) / kPi, 1e-4);
  EXPECT_TRUE(b.bound_ok);
  double ratio = b.length / b.w_hull;
  EXPECT_GE(ratio, 1.5);
  EXPECT_LE(ratio, kPi);
}

TEST(LengthBound, SpiralIsNearExtremal) {
  auto b = length_bound_check(log_spiral(0.3, 4, 1600), make_grid(2, 64));
  EXPECT_TRUE(b.bound_ok);
  EXPECT_GE(b.length / b.w_hull, 2.9);
}

TEST(SepProperties, AcutenessAtVertices) {
  for (const auto& p : {log_spiral(0.3, 2, 120), cantor_graph(4), half_circle(1.0, 60)}) {
    const auto& v = p.points();
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t a = 0; a < i; ++a) {
        for (std::size_t b = 0; b < i; ++b) {
          double s = (v[a] - v[i]).dot(v[b] - v[i]);
          EXPECT_GE(s, -1e-9 * std::max(1.0, (v[a] - v[i]).norm() * (v[b] - v[i]).norm()));
        }
      }
    }
  }
}

TEST(SepProperties, DirectionInNormalConeOfPrefixHull) {
  for (const auto& p : {log_spiral(0.3, 2, 150), cantor_graph(4)}) {
    const auto& v = p.points();
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      std::vector<Vec> prefix(v.begin(), v.begin() + static_cast<long>(i) + 1);
      Vec d = (v[i + 1] - v[i]).normalized();
      EXPECT_TRUE(in_normal_cone(hull(prefix), v[i], d, 1e-6)) << "vertex " << i;
    }
  }
}

TEST(SepProperties, MeanWidthGrowthDominatesNormalConeIntegral) {
  // dw/ds >= (2/omega_2) * integral over the unit section of N(x) of <theta, d>.
  auto p = log_spiral(0.3, 2, 150);
  const auto& v = p.points();
  double worst_gap = 1e300;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    std::vector<Vec> prefix(v.begin(), v.begin() + static_cast<long>(i) + 1);
    ConvexBody k = hull(prefix);
    Vec d = (v[i + 1] - v[i]).normalized();
    // Integral by midpoint rule over the angles of N(x).
    double integral = 0.0;
    const int steps = 20000;
    for (int s = 0; s < steps; ++s) {
      double a = 2 * kPi * (s + 0.5) / steps;
      Vec th = vec({std::cos(a), std::sin(a)});
      if (in_normal_cone(k, v[i], th, 0.0)) integral += th.dot(d) * 2 * kPi / steps;
    }
    std::vector<Vec> next = prefix;
    next.push_back(v[i + 1]);
    double rate = (mean_width_exact2d(hull(next)) - mean_width_exact2d(k)) / (v[i + 1] - v[i]).norm();
    double rhs = 2 / omega(2) * integral;
    EXPECT_GE(rate, rhs - 1e-3) << "vertex " << i;
    worst_gap = std::min(worst_gap, rate - rhs);
  }
  RecordProperty("min_gap", std::to_string(worst_gap));
}
