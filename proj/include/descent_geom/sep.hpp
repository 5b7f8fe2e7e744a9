#pragma once

// Self-expanding paths given as polylines.

#include "descent_geom/mean_width.hpp"

#include <optional>
#include <vector>

namespace dg {

class Polyline {
 public:
  /// Consecutive points closer than kPointTol are collapsed.
  explicit Polyline(const std::vector<Vec>& points);

  int dim() const { return static_cast<int>(pts_[0].size()); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<Vec>& points() const { return pts_; }
  const Vec& point(std::size_t i) const { return pts_[i]; }
  const Vec& front() const { return pts_.front(); }
  const Vec& back() const { return pts_.back(); }

  double length() const;
  /// Cumulative arc length at each vertex.
  std::vector<double> arc_lengths() const;

  friend bool operator==(const Polyline& a, const Polyline& b);

 private:
  std::vector<Vec> pts_;
};

struct SepWitness {
  Vec y;  // earlier vertex
  Vec a;  // segment start
  Vec d;  // unit segment direction
  std::size_t y_index = 0;
  std::size_t segment = 0;
  double value = 0.0;  // <d, a - y> / |a - y|
};

struct SepResult {
  bool ok = true;
  std::optional<SepWitness> witness;
};

/// For every segment [a, b] with direction d and every vertex y up to a:
/// <d, a - y> >= -tol |a - y|. The witness is the most negative violation.
SepResult is_sep(const Polyline& gamma, double tol = 1e-9);

/// Mean width of the hull of each prefix. Throws PreconditionViolated for a
/// non-SEP or when a vertex does not leave the current hull.
std::vector<double> meanwidth_param(const Polyline& gamma, const SphereGrid& grid, double tol = 1e-9);

struct LipschitzResult {
  double max_ratio = 0.0;
  double bound = 0.0;
  std::size_t argmax = 0;
  std::size_t zero_steps = 0;  // steps with no hull growth, skipped
  bool ok = false;
};

LipschitzResult lipschitz_ratio(const Polyline& gamma, const SphereGrid& grid, double tol = 1e-9);

struct LengthBound {
  double length = 0.0;
  double w_hull = 0.0;
  double bound = 0.0;  // c1(n) * w_hull
  bool bound_ok = false;
};

LengthBound length_bound_check(const Polyline& gamma, const SphereGrid& grid, double tol = 1e-6);

}  // namespace dg
