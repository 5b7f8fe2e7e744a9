#pragma once

// Nested families of convex bodies indexed by a scalar parameter.

#include "descent_geom/mean_width.hpp"

#include <optional>
#include <vector>

namespace dg {

struct Stratification {
  std::vector<ConvexBody> bodies;
  std::vector<double> params;  // empty, or strictly increasing and aligned with bodies

  std::size_t size() const { return bodies.size(); }
  bool has_params() const { return !params.empty(); }
  const ConvexBody& min() const { return bodies.front(); }
  const ConvexBody& max() const { return bodies.back(); }
  int dim() const { return bodies.front().dim(); }
};

/// Orders bodies by inclusion and checks strict nesting. Throws
/// NotAChainError naming the caller's indices of an incomparable pair, and
/// Degenerate for two identical members.
Stratification validate_stratification(const std::vector<ConvexBody>& bodies,
                                       const std::vector<double>& params = {},
                                       double tol = kPointTol);

/// Stratification sampled in mean width at resolution h.
struct Family {
  Stratification strat;
  double h = 0.0;

  const std::vector<ConvexBody>& bodies() const { return strat.bodies; }
  const std::vector<double>& params() const { return strat.params; }
  std::size_t size() const { return strat.size(); }
  double w_min() const { return strat.params.front(); }
  double w_max() const { return strat.params.back(); }
  int dim() const { return strat.dim(); }
};

/// Validates and attaches mean-width parameters.
Family make_family(const std::vector<ConvexBody>& bodies, double h, const SphereGrid& grid);

/// K2 intersected with the parallel body of K1 at distance f * dist(K1, K2),
/// as a V-polytope (32 arc points per vertex in the plane, radial sampling
/// in higher dimension).
ConvexBody interpolate(const ConvexBody& k1, const ConvexBody& k2, double f);

struct CompleteOptions {
  double bisection_rel_tol = 1e-6;
  int max_bisection = 200;
};

/// Fills every mean-width gap wider than h by interpolation. The output keeps
/// the original bodies and adds the grid w0 + j (w1 - w0)/N, N = ceil(dw/h),
/// each hit to within min(bisection_rel_tol dw, 1e-7 h).
Family complete(const Stratification& strat, double h, const SphereGrid& grid,
                const CompleteOptions& opts = {});

/// Consecutive members differ by at most h in parameter and their Hausdorff
/// distance respects the mean-width bound (diam^{n-1} dw / c0)^{1/n}.
bool is_connected(const Family& fam, double tol = 1e-6);

/// Member at parameter w, interpolated between neighbours by parameter fraction.
ConvexBody body_at(const Family& fam, double w);

/// Sup over the union of both parameter grids of the Hausdorff distance.
double family_distance(const Family& f, const Family& g);

struct Bracket {
  std::optional<std::size_t> inner;  // last member contained in K
  std::optional<std::size_t> outer;  // first member containing K
};
Bracket bracket(const Family& fam, const ConvexBody& k, double tol = kPointTol);

}  // namespace dg
