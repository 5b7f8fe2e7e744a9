#pragma once

// Deterministic families and curves used by tests, acceptance and the CLI.

#include "descent_geom/descent.hpp"

#include <cstdint>
#include <vector>

namespace dg {

/// Concentric regular 64-gons (first vertex on the positive x axis) with
/// radii r0 + j (r1 - r0)/levels, j = 0..levels, parametrized by exact
/// mean width.
Family disk_family(double r0, double r1, std::size_t levels, int sides = 64);

/// Squares centred at the origin, side 1.5^k, rotated by 15 degrees per
/// level, completed to resolution h.
Stratification rotated_squares(int levels = 4);
Family rotated_squares_family(double h, int levels = 4);

/// Random nested polygons: a random polygon grown by hulling in farther
/// random points at each level, completed on a uniform grid of n_steps.
Family random_family_2d(std::uint64_t seed, int levels = 3, std::size_t n_steps = 128);

/// Homothetic copies of a random polytope in R^n about its centroid, scale
/// factors 1..2 on a uniform grid of n_steps intervals.
Family homothetic_family(std::uint64_t seed, int n, std::size_t n_steps = 128);

/// Boundary point hit by a seeded random ray from the centroid.
Vec random_boundary_point(const ConvexBody& k, std::uint64_t seed);

/// Level-L Cantor staircase: the endpoints of the 2^L remaining intervals
/// joined in order.
Polyline cantor_graph(int level);
/// Omega_t = hull of the region above the staircase over [0, t], sampled at
/// the staircase abscissae, parametrized by t.
Stratification cantor_family(int level);
/// Concentric disks of radius (g(t) + t)/2 for t at the staircase abscissae
/// with the curve t -> (t, 0), parametrized by mean width g(t) + t.
struct CantorDisks {
  Family family;
  Polyline curve;
};
CantorDisks cantor_disks(int level, int sides = 64);

/// Flat discs D_t (t in [0, 1]) followed by the rounded cylinders E_t
/// (t in (1, 2]) of the R^3 stalling example, parametrized by t.
struct StallExample {
  Stratification strat;  // params are t
  Vec endpoint;           // (0.5, 0, 1)
  Polyline expected;      // radial, stall, vertical
  double stall_begin = 0.5;
  double stall_end = 1.0;
};
StallExample stall_example(int disc_levels = 20, int cyl_levels = 10, int ring = 64, int beta_levels = 9);

/// Mean-width family of the same bodies (for construct_descent).
Family stall_example_family(const StallExample& ex, const SphereGrid& grid);

/// Segment of half-length alpha/(2 nu) on the x axis and its cap with the
/// apex (0, 1/nu).
struct CapPair {
  ConvexBody inner;
  ConvexBody outer;
};
CapPair apex_cap_pair(int nu, double alpha);

/// Polyline samples r = exp(b phi), phi in [0, turns 2 pi].
Polyline log_spiral(double growth, double turns, std::size_t vertices);
/// Half circle of diameter d from (d/2, 0) through (0, d/2) to (-d/2, 0).
Polyline half_circle(double d, std::size_t vertices);

}  // namespace dg
