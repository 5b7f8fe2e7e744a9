#pragma once

// Steepest-descent curves by backward projection, expanding couples and the
// checks attached to them.

#include "descent_geom/family.hpp"
#include "descent_geom/sep.hpp"

#include <optional>
#include <vector>

namespace dg {

struct DescentCurve {
  Polyline curve;
  Stratification knots;         // members at the knot parameters, params set
  std::vector<Vec> knot_points;  // p^(0), ..., p^(m), inner to outer
};

/// m knot intervals, knots w_j = w_min + j (w_max - w_min)/m. A family member
/// within 1e-5 (w_max - w_min) of a knot is used as is, other knots are
/// interpolated. p^(m) = endpoint, p^(j-1) = projection of p^(j) onto the
/// member at w_{j-1}.
DescentCurve construct_descent(const Family& fam, const Vec& endpoint, int m);

/// Uses the family's own members as knots.
DescentCurve construct_descent(const Family& fam, const Vec& endpoint);

/// sup_w |x_a(w) - x_b(w)| for the piecewise-linear-in-parameter curves.
double uniform_distance(const DescentCurve& a, const DescentCurve& b);

/// Last point of the curve inside a body.
struct Alignment {
  std::size_t segment = 0;  // point = p[segment] + s (p[segment+1] - p[segment])
  double s = 0.0;
  Vec point;
  double arc = 0.0;
  bool found = false;
};
Alignment align(const Polyline& gamma, const ConvexBody& q, double tol = 1e-9);

struct EcWitness {
  std::size_t body = 0;
  Vec x;
  Vec y;
  Vec x1;
  double dist_xy = 0.0;
  double dist_x1y = 0.0;
};

struct EcResult {
  bool ok = true;
  bool meets_all = true;     // every member meets the curve
  bool ends_on_max = true;   // the curve reaches the relative boundary of the max
  bool enclosed = true;      // the curve lies in the max
  std::optional<std::size_t> missed_body;
  std::optional<EcWitness> witness;
};

/// Checks every member Q, every curve point x outside relint Q (vertices and
/// the aligned point), every vertex y of Q and every later curve point x1.
/// Witness preference: the aligned point against the curve's end point,
/// then any x against the end point, then the largest violation overall.
EcResult is_expanding_couple(const Polyline& gamma, const Stratification& strat, double tol = 1e-9);

struct SdcKnot {
  double t = 0.0;
  Vec x;
  bool on_boundary = false;
  bool in_normal_cone = true;
};

struct SdcResult {
  bool ok = true;
  std::vector<SdcKnot> knots;
  double bad_measure_i = 0.0;   // total forward parameter gap over knots failing (i)
  double bad_measure_ii = 0.0;  // same for (ii)
  std::optional<SdcKnot> witness;
};

/// Aligned points on the relative boundary of their member (i), outgoing
/// direction in the member's normal cone (ii). Failures are accepted when
/// their parameter measure is at most measure_tol.
SdcResult is_viable_sdc(const Polyline& gamma, const Stratification& strat, double tol = 1e-6,
                        double measure_tol = 0.0);

struct JointParam {
  std::vector<double> w;
  std::vector<double> s;
  std::vector<double> tau;
  std::vector<Vec> z;
  std::vector<double> speed;  // |dz| / dtau per interval
  double lipschitz_estimate = 0.0;
  bool ok = false;
};

JointParam joint_parametrization(const Polyline& gamma, const Stratification& strat, double tol = 1e-9);

struct StabilityResult {
  bool ok = true;
  double endpoint_distance = 0.0;
  std::vector<double> knot_distance;
  double max_violation = 0.0;
};

StabilityResult stability_check(const Polyline& g1, const Polyline& g2, const Stratification& strat,
                                double tol = 1e-9);

struct AnnulusResult {
  double len_outside = 0.0;
  double dist12 = 0.0;
  double delta_w = 0.0;
  double bound_i = 0.0;
  double bound_ii = 0.0;
  bool bound_i_ok = false;
  bool bound_ii_ok = false;
};

AnnulusResult annulus_length_check(const Polyline& gamma, const Stratification& strat, std::size_t k1_index,
                                   const SphereGrid& grid, double tol = 1e-9);

/// Members whose relative boundary holds more than one curve vertex, after
/// merging vertices closer than cluster_tol.
std::vector<std::size_t> boundary_multiplicity_violations(const Polyline& gamma, const Stratification& strat,
                                                          double cluster_tol = 1e-6);

}  // namespace dg
