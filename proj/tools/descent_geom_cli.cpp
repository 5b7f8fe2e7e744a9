// descent-geom: generators, validators and bound checkers over JSON lines.
//
// Exit status: 0 all checks pass, 1 a mathematical check failed (witness on
// stdout), 2 bad input or usage.

#include "descent_geom/fixtures.hpp"
#include "descent_geom/io.hpp"
#include "descent_geom/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace dg;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t grid_size = kDefaultGridSize;
  double tol = 1e-9;

  json to_json() const { return {{"seed", seed}, {"grid_size", grid_size}, {"tol", tol}}; }
};

struct CheckFailed {
  json report;
};

json read_json(const std::string& path) {
  try {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("json: ") + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

void emit(const json& j, const std::string& out_path = "") {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump() << '\n';
  } else {
    write_text(out_path, j.dump() + "\n");
  }
}

Polyline load_curve(const std::string& path) {
  if (!path.empty() && path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
    return polyline_from_csv(in);
  }
  return polyline_from_json(read_json(path));
}

// A stratification from --strat, else the knots embedded in a descend output.
Stratification load_strat(const std::string& path, const json* curve_doc) {
  if (!path.empty()) return stratification_from_json(read_json(path));
  if (curve_doc && curve_doc->contains("knots")) return stratification_from_json(curve_doc->at("knots"));
  fail(ErrorKind::InvalidInput, "no stratification given (--strat)");
}

json witness_json(const EcWitness& w) {
  return {{"body", w.body}, {"x", to_json(w.x)}, {"y", to_json(w.y)}, {"x1", to_json(w.x1)},
          {"dist_xy", w.dist_xy}, {"dist_x1y", w.dist_x1y}};
}

void finish(json report, bool ok, const RunConfig& cfg) {
  report["ok"] = ok;
  report["config"] = cfg.to_json();
  if (!ok) throw CheckFailed{std::move(report)};
  emit(report);
}

SphereGrid grid_for(int n, const RunConfig& cfg) { return make_grid(n, cfg.grid_size, cfg.seed); }

void write_table(const std::string& path, const JointParam& jp) {
  std::ostringstream s;
  s << std::setprecision(17) << "w,s,tau,speed\n";
  for (std::size_t j = 0; j < jp.w.size(); ++j) {
    s << jp.w[j] << ',' << jp.s[j] << ',' << jp.tau[j] << ',' << (j == 0 ? 0.0 : jp.speed[j - 1]) << '\n';
  }
  write_text(path, s.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steepest-descent curves for nested convex families"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "quadrature / generator seed (DESCENT_GEOM_SEED overrides)");
  app.add_option("--grid-size", cfg.grid_size, "sphere quadrature nodes")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "check tolerance")->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a family");
  gen->require_subcommand(1);
  int g_dim = 2;
  std::size_t g_levels = 10;
  double g_r0 = 0.0, g_r1 = 1.0, g_step = 0.05;
  int g_sides = 64;
  std::size_t g_steps = 128;
  std::string g_out;
  auto* gen_disks = gen->add_subcommand("disks", "concentric regular polygons");
  gen_disks->add_option("--n", g_dim, "dimension (2)");
  gen_disks->add_option("--levels", g_levels)->check(CLI::PositiveNumber);
  gen_disks->add_option("--r0", g_r0);
  gen_disks->add_option("--r1", g_r1);
  gen_disks->add_option("--sides", g_sides)->check(CLI::Range(3, 4096));
  auto* gen_squares = gen->add_subcommand("squares", "rotated nested squares, completed");
  gen_squares->add_option("--levels", g_levels)->check(CLI::Range(2, 12));
  gen_squares->add_option("--step", g_step)->check(CLI::PositiveNumber);
  auto* gen_random = gen->add_subcommand("random", "random nested polygons (n = 2) or homothetic polytopes");
  gen_random->add_option("--n", g_dim)->check(CLI::Range(2, kMaxDim));
  gen_random->add_option("--levels", g_levels)->check(CLI::Range(1, 20));
  gen_random->add_option("--steps", g_steps)->check(CLI::PositiveNumber);
  for (auto* s : {gen_disks, gen_squares, gen_random}) s->add_option("--out", g_out);

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "named curves and families");
  fix->require_subcommand(1);
  int f_level = 8;
  bool f_family = false;
  std::string f_out;
  auto* fix_cantor = fix->add_subcommand("cantor", "Cantor staircase and the family above it");
  auto* fix_cdisks = fix->add_subcommand("cantor-disks", "concentric disks of radius (g(t)+t)/2");
  auto* fix_stall = fix->add_subcommand("stall", "flat discs and rounded cylinders in R^3");
  for (auto* s : {fix_cantor, fix_cdisks}) s->add_option("--level", f_level)->check(CLI::Range(0, 14));
  for (auto* s : {fix_cantor, fix_cdisks, fix_stall}) {
    s->add_flag("--family", f_family, "emit the family instead of the curve");
    s->add_option("--out", f_out);
  }

  // check
  auto* check = app.add_subcommand("check", "validate a curve");
  check->require_subcommand(1);
  std::string c_curve, c_strat;
  double c_measure = 0.0;
  auto* check_sep = check->add_subcommand("sep", "self-expanding path");
  auto* check_ec = check->add_subcommand("ec", "expanding couple");
  auto* check_sdc = check->add_subcommand("sdc", "viable steepest descent at the knots");
  check_sdc->add_option("--measure-tol", c_measure, "accepted parameter measure of failing knots");
  for (auto* s : {check_sep, check_ec, check_sdc}) s->add_option("--curve", c_curve, "curve JSON or CSV (stdin)");
  for (auto* s : {check_ec, check_sdc}) s->add_option("--strat", c_strat);

  // descend
  auto* desc = app.add_subcommand("descend", "backward-projection descent curve");
  std::string d_family, d_endpoint, d_out, d_svg, d_csv;
  int d_knots = 0;
  desc->add_option("--family", d_family, "family JSON (stdin)");
  desc->add_option("--endpoint", d_endpoint, "\"x,y,...\" on the boundary of the largest member")->required();
  desc->add_option("--knots", d_knots, "knot intervals (default: every member)")->check(CLI::Range(2, 1 << 20));
  desc->add_option("--out", d_out);
  desc->add_option("--svg", d_svg);
  desc->add_option("--csv", d_csv, "table of w, s, tau, |z'|");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "length and stability bounds");
  bounds->require_subcommand(1);
  std::string b_curve, b_curve2, b_strat;
  std::size_t b_k1 = 0;
  auto* b_length = bounds->add_subcommand("length", "length <= c1(n) w(co curve)");
  auto* b_lip = bounds->add_subcommand("lipschitz", "|dx/dw| <= c1(n)");
  auto* b_ann = bounds->add_subcommand("annulus", "length outside a member");
  auto* b_stab = bounds->add_subcommand("stability", "knot-wise distance of two curves");
  for (auto* s : {b_length, b_lip, b_ann, b_stab}) s->add_option("--curve", b_curve);
  b_ann->add_option("--k1", b_k1, "member index");
  for (auto* s : {b_ann, b_stab}) s->add_option("--strat", b_strat);
  b_stab->add_option("--curve2", b_curve2)->required();

  // family
  auto* famc = app.add_subcommand("family", "complete or check a family");
  famc->require_subcommand(1);
  std::string fm_in, fm_out;
  double fm_step = 0.0;
  auto* fam_complete = famc->add_subcommand("complete", "fill mean-width gaps wider than the step");
  fam_complete->add_option("--step", fm_step)->required()->check(CLI::PositiveNumber);
  auto* fam_check = famc->add_subcommand("check", "resolution-relative connectedness");
  for (auto* s : {fam_complete, fam_check}) s->add_option("--in", fm_in);
  fam_complete->add_option("--out", fm_out);

  auto* report = app.add_subcommand("report", "summary of the built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (const char* env = std::getenv("DESCENT_GEOM_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "DESCENT_GEOM_SEED is not an integer\n";
      return 2;
    }
  }

  try {
    if (gen->parsed()) {
      Family f = [&] {
        if (gen_disks->parsed()) {
          if (g_dim != 2) fail(ErrorKind::InvalidInput, "gen disks: only --n 2");
          return disk_family(g_r0, g_r1, g_levels, g_sides);
        }
        if (gen_squares->parsed()) return rotated_squares_family(g_step, static_cast<int>(g_levels));
        if (g_dim == 2) return random_family_2d(cfg.seed, static_cast<int>(g_levels), g_steps);
        return homothetic_family(cfg.seed, g_dim, g_steps);
      }();
      emit(to_json(f), g_out);
    } else if (fix->parsed()) {
      json out;
      if (fix_cantor->parsed()) {
        out = f_family ? to_json(cantor_family(f_level)) : to_json(cantor_graph(f_level));
      } else if (fix_cdisks->parsed()) {
        CantorDisks cd = cantor_disks(f_level);
        out = f_family ? to_json(cd.family) : to_json(cd.curve);
      } else {
        StallExample ex = stall_example();
        out = f_family ? to_json(ex.strat) : to_json(ex.expected);
      }
      emit(out, f_out);
    } else if (check->parsed()) {
      json doc = c_curve.size() > 4 && c_curve.substr(c_curve.size() - 4) == ".csv" ? to_json(load_curve(c_curve))
                                                                                    : read_json(c_curve);
      Polyline gamma = polyline_from_json(doc);
      if (check_sep->parsed()) {
        SepResult r = is_sep(gamma, cfg.tol);
        json rep = {{"check", "sep"}, {"vertices", gamma.size()}};
        if (r.witness) {
          rep["witness"] = {{"y", to_json(r.witness->y)}, {"a", to_json(r.witness->a)},
                            {"d", to_json(r.witness->d)}, {"value", r.witness->value}};
        }
        finish(rep, r.ok, cfg);
      } else if (check_ec->parsed()) {
        Stratification s = load_strat(c_strat, &doc);
        EcResult r = is_expanding_couple(gamma, s, cfg.tol);
        json rep = {{"check", "ec"}, {"meets_all", r.meets_all}, {"ends_on_max", r.ends_on_max},
                    {"enclosed", r.enclosed}};
        if (r.witness) rep["witness"] = witness_json(*r.witness);
        finish(rep, r.ok, cfg);
      } else {
        Stratification s = load_strat(c_strat, &doc);
        SdcResult r = is_viable_sdc(gamma, s, std::max(cfg.tol, 1e-6), c_measure);
        json failing = json::array();
        for (const auto& k : r.knots) {
          if (!k.on_boundary || !k.in_normal_cone) {
            failing.push_back({{"t", k.t}, {"x", to_json(k.x)}, {"on_boundary", k.on_boundary},
                               {"in_normal_cone", k.in_normal_cone}});
          }
        }
        json rep = {{"check", "sdc"}, {"bad_measure_i", r.bad_measure_i}, {"bad_measure_ii", r.bad_measure_ii},
                    {"failing_knots", failing}};
        finish(rep, r.ok, cfg);
      }
    } else if (desc->parsed()) {
      Family f = family_from_json(read_json(d_family));
      Vec e = parse_vec(d_endpoint);
      DescentCurve dc = d_knots > 0 ? construct_descent(f, e, d_knots) : construct_descent(f, e);
      json out = to_json(dc.curve);
      out["knots"] = to_json(dc.knots);
      out["config"] = cfg.to_json();
      emit(out, d_out);
      if (!d_svg.empty()) write_text(d_svg, render_svg(dc.knots, &dc.curve));
      if (!d_csv.empty()) write_table(d_csv, joint_parametrization(dc.curve, dc.knots, cfg.tol));
    } else if (bounds->parsed()) {
      json doc = b_curve.size() > 4 && b_curve.substr(b_curve.size() - 4) == ".csv" ? to_json(load_curve(b_curve))
                                                                                    : read_json(b_curve);
      Polyline gamma = polyline_from_json(doc);
      SphereGrid grid = grid_for(gamma.dim(), cfg);
      if (b_length->parsed()) {
        LengthBound b = length_bound_check(gamma, grid, std::max(cfg.tol, 1e-6));
        finish({{"bound", "length"}, {"length", b.length}, {"w_hull", b.w_hull}, {"c1_w", b.bound}}, b.bound_ok, cfg);
      } else if (b_lip->parsed()) {
        LipschitzResult r = lipschitz_ratio(gamma, grid, cfg.tol);
        finish({{"bound", "lipschitz"}, {"max_ratio", r.max_ratio}, {"c1", r.bound}, {"argmax", r.argmax},
                {"zero_steps", r.zero_steps}},
               r.ok, cfg);
      } else if (b_ann->parsed()) {
        Stratification s = load_strat(b_strat, &doc);
        AnnulusResult r = annulus_length_check(gamma, s, b_k1, grid, std::max(cfg.tol, 1e-6));
        finish({{"bound", "annulus"}, {"len_outside", r.len_outside}, {"dist12", r.dist12}, {"delta_w", r.delta_w},
                {"bound_i", r.bound_i}, {"bound_ii", r.bound_ii}, {"bound_i_ok", r.bound_i_ok},
                {"bound_ii_ok", r.bound_ii_ok}},
               r.bound_i_ok && r.bound_ii_ok, cfg);
      } else {
        Stratification s = load_strat(b_strat, &doc);
        StabilityResult r = stability_check(gamma, load_curve(b_curve2), s, std::max(cfg.tol, 1e-9));
        finish({{"bound", "stability"}, {"endpoint_distance", r.endpoint_distance},
                {"max_violation", r.max_violation}, {"knot_distance", r.knot_distance}},
               r.ok, cfg);
      }
    } else if (famc->parsed()) {
      json doc = read_json(fm_in);
      if (fam_complete->parsed()) {
        Stratification s = stratification_from_json(doc);
        Family f = complete(s, fm_step, grid_for(s.dim(), cfg));
        emit(to_json(f), fm_out);
      } else {
        Family f = family_from_json(doc);
        finish({{"check", "connected"}, {"members", f.size()}, {"h", f.h}}, is_connected(f), cfg);
      }
    } else if (report->parsed()) {
      json rep;
      Family disks = disk_family(0.0, 1.0, 20);
      DescentCurve dc = construct_descent(disks, vec({1, 0}));
      LengthBound lb = length_bound_check(dc.curve, grid_for(2, cfg));
      rep["disks"] = {{"members", disks.size()}, {"curve_vertices", dc.curve.size()}, {"length", lb.length},
                      {"pi_w", lb.bound}, {"sep", is_sep(dc.curve).ok},
                      {"ec", is_expanding_couple(dc.curve, dc.knots).ok}};
      EcResult ec = is_expanding_couple(cantor_graph(6), cantor_family(6));
      rep["cantor"] = {{"level", 6}, {"ec", ec.ok}};
      if (ec.witness) rep["cantor"]["witness"] = witness_json(*ec.witness);
      StallExample ex = stall_example();
      SdcResult sdc = is_viable_sdc(ex.expected, ex.strat);
      json stall = json::array();
      for (const auto& k : sdc.knots) {
        if (!k.on_boundary) stall.push_back(k.t);
      }
      rep["stall"] = {{"sdc", sdc.ok}, {"failing_t", stall}};
      rep["config"] = cfg.to_json();
      emit(rep);
    }
  } catch (const CheckFailed& f) {
    emit(f.report);
    return 1;
  } catch (const GeomError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
