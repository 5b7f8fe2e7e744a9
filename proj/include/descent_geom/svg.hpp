#pragma once

#include "descent_geom/family.hpp"
#include "descent_geom/sep.hpp"

#include <string>

namespace dg {

/// Family outlines plus the curve. Planar input is drawn as is; higher
/// dimensions are projected to the first two coordinates as wireframes.
std::string render_svg(const Stratification& strat, const Polyline* curve, int width = 600);

}  // namespace dg
