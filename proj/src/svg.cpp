#include "descent_geom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dg {

namespace {

std::vector<Vec> planar_outline(const ConvexBody& k) {
  std::vector<Vec> pts;
  for (const auto& v : k.vertices()) pts.push_back(v.head(std::min<Eigen::Index>(2, v.size())));
  if (pts[0].size() == 1) {
    for (auto& p : pts) p = vec({p[0], 0.0});
  }
  return hull(pts).vertices();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::string render_svg(const Stratification& strat, const Polyline* curve, int width) {
  std::vector<std::vector<Vec>> outlines;
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  auto grow = [&](const Vec& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const auto& b : strat.bodies) {
    outlines.push_back(planar_outline(b));
    for (const auto& p : outlines.back()) grow(p);
  }
  std::vector<Vec> cpts;
  if (curve) {
    for (const auto& x : curve->points()) {
      Vec p = x.size() >= 2 ? Vec(x.head(2)) : vec({x[0], 0.0});
      cpts.push_back(p);
      grow(p);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double pad = 0.05 * span;
  const double s = width / (span + 2 * pad);
  const int height = static_cast<int>(std::ceil((hi_y - lo_y + 2 * pad) * s));
  auto px = [&](const Vec& p) { return fmt((p[0] - lo_x + pad) * s) + "," + fmt((hi_y - p[1] + pad) * s); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  for (const auto& o : outlines) {
    out << (o.size() >= 3 ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"#4a6fa5\" stroke-width=\"0.7\" points=\"";
    for (std::size_t i = 0; i < o.size(); ++i) out << (i ? " " : "") << px(o[i]);
    out << "\"/>\n";
  }
  if (!cpts.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < cpts.size(); ++i) out << (i ? " " : "") << px(cpts[i]);
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dg
