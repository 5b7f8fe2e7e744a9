#include "descent_geom/fixtures.hpp"
#include "descent_geom/io.hpp"
#include "descent_geom/svg.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace dg;

TEST(Json, BodyPolylineRoundTrip) {
  std::mt19937_64 rng(4);
  for (int n : {1, 2, 3, 5}) {
    auto k = dgt::random_body(rng, n, 12);
    auto back = body_from_json(json::parse(to_json(k).dump()));
    EXPECT_EQ(back, k);
  }
  auto p = log_spiral(0.3, 1, 40);
  EXPECT_EQ(polyline_from_json(json::parse(to_json(p).dump())), p);
}

TEST(Json, StratificationAndFamilyRoundTrip) {
  auto f = disk_family(0.5, 1.0, 6);
  auto g = family_from_json(json::parse(to_json(f).dump()));
  ASSERT_EQ(g.size(), f.size());
  EXPECT_EQ(g.h, f.h);
  EXPECT_EQ(g.params(), f.params());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g.bodies()[i], f.bodies()[i]);

  auto s = stratification_from_json(json::parse(to_json(rotated_squares()).dump()));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_FALSE(s.has_params());
}

TEST(Json, GridRoundTrip) {
  auto g = make_grid(3, 500, 9);
  auto back = grid_from_json(json::parse(to_json(g).dump()));
  EXPECT_EQ(back.dim, g.dim);
  EXPECT_EQ(back.seed, g.seed);
  EXPECT_TRUE(back.directions == g.directions);
  EXPECT_TRUE(back.weights == g.weights);
}

TEST(Json, MalformedInputIsInvalidInput) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const GeomError& e) {
      return e.kind();
    }
    return ErrorKind::NumericalFailure;
  };
  EXPECT_EQ(kind([] { body_from_json(json::parse(R"({"dim":2})")); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind([] { body_from_json(json::parse(R"({"dim":2,"vertices":[[0,0],[1]]})")); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind([] { polyline_from_json(json::parse(R"({"dim":2,"points":"x"})")); }), ErrorKind::InvalidInput);
  // Not nested.
  json bad = to_json(rotated_squares());
  std::swap(bad["bodies"][0], bad["bodies"][3]);
  bad["bodies"][0] = to_json(dgt::box(vec({5, 5}), vec({6, 6})));
  EXPECT_THROW(stratification_from_json(bad), GeomError);
  // Interval disagreeing with params.
  json fj = to_json(disk_family(0.5, 1.0, 3));
  fj["interval"][1] = 99.0;
  EXPECT_EQ(kind([&] { family_from_json(fj); }), ErrorKind::InvalidInput);
}

TEST(Csv, ReadWrite) {
  std::istringstream in("# comment\nx,y\n0,0\n\n1 0\n1,2\n");
  auto p = polyline_from_csv(in);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_TRUE(p.point(2).isApprox(vec({1, 2})));
  std::ostringstream out;
  auto s = log_spiral(0.3, 1, 20);
  write_csv(out, s);
  std::istringstream again(out.str());
  EXPECT_EQ(polyline_from_csv(again), s);
  std::istringstream ragged("0,0\n1,2,3\n");
  EXPECT_THROW(polyline_from_csv(ragged), GeomError);
}

TEST(ParseVec, Forms) {
  EXPECT_TRUE(parse_vec("1,0").isApprox(vec({1, 0})));
  EXPECT_TRUE(parse_vec(" 0.5 0 1 ").isApprox(vec({0.5, 0, 1})));
  EXPECT_THROW(parse_vec(""), GeomError);
  EXPECT_THROW(parse_vec("1,a"), GeomError);
}

TEST(Svg, OutlinesAndCurve) {
  auto f = disk_family(0.5, 1.0, 3);
  Polyline c({vec({0.5, 0}), vec({1, 0})});
  auto svg = render_svg(f.strat, &c);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t polys = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polygon", pos)) != std::string::npos; ++pos) ++polys;
  EXPECT_EQ(polys, f.size());
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + DESCENT_GEOM_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) { return testing::TempDir() + "dg_" + name; }

}  // namespace

TEST(Cli, PipelineAndExitCodes) {
  auto r = run("gen disks --levels 8 | " DESCENT_GEOM_CLI " descend --endpoint 1,0 --knots 8 | " DESCENT_GEOM_CLI
               " check ec");
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_TRUE(j.contains("config"));

  EXPECT_EQ(run("fixtures cantor --level 6 | " DESCENT_GEOM_CLI " check sep").code, 0);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("gen disks | " DESCENT_GEOM_CLI " descend --endpoint 0.2,0").code, 2);
  EXPECT_EQ(run("descend --family /nonexistent.json --endpoint 1,0").code, 2);
}

TEST(Cli, CantorEcFailureReportsWitness) {
  const auto curve = tmp("cantor.json"), fam = tmp("cantor_family.json");
  ASSERT_EQ(run("fixtures cantor --level 6 --out " + curve).code, 0);
  ASSERT_EQ(run("fixtures cantor --level 6 --family --out " + fam).code, 0);
  auto r = run("check ec --curve " + curve + " --strat " + fam);
  EXPECT_EQ(r.code, 1);
  auto w = json::parse(r.out)["witness"];
  EXPECT_NEAR(w["dist_xy"].get<double>(), 0.5, 1e-6);
  EXPECT_NEAR(w["dist_x1y"].get<double>(), 1.0 / 3, 1e-6);
}

TEST(Cli, DescendWritesSvgAndCsv) {
  const auto fam = tmp("squares.json"), svg = tmp("d.svg"), csv = tmp("d.csv");
  ASSERT_EQ(run("gen squares --step 0.05 --out " + fam).code, 0);
  std::ifstream fin(fam);
  Family f = family_from_json(json::parse(fin));
  const Vec& corner = f.strat.max().vertices()[0];
  std::ostringstream e;
  e.precision(17);
  e << corner[0] << "," << corner[1];
  auto r = run("descend --family " + fam + " --endpoint " + e.str() + " --knots 16 --svg " + svg + " --csv " + csv);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["points"].size(), polyline_from_json(json::parse(r.out)).size());
  std::ifstream s(svg), c(csv);
  std::stringstream ss, cs;
  ss << s.rdbuf();
  cs << c.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
  EXPECT_EQ(cs.str().rfind("w,s,tau,speed", 0), 0u);
}

TEST(Cli, SeedOptionAndEnvironment) {
  EXPECT_EQ(json::parse(run("--seed 3 report").out)["config"]["seed"].get<int>(), 3);
  EXPECT_EQ(json::parse(run("report", "DESCENT_GEOM_SEED=11").out)["config"]["seed"].get<int>(), 11);
  EXPECT_EQ(run("report", "DESCENT_GEOM_SEED=abc").code, 2);
}
