#pragma once

// JSON and CSV forms of bodies, polylines, stratifications, families and
// quadrature grids. Loaders throw GeomError(InvalidInput) on malformed input.

#include "descent_geom/family.hpp"
#include "descent_geom/sep.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace dg {

using json = nlohmann::json;

/// {"dim": n, "vertices": [[...], ...]}
json to_json(const ConvexBody& k);
ConvexBody body_from_json(const json& j);

/// {"dim": n, "points": [[...], ...]}
json to_json(const Polyline& p);
Polyline polyline_from_json(const json& j);

/// {"bodies": [...], "params": [...]} (params omitted when absent)
json to_json(const Stratification& s);
Stratification stratification_from_json(const json& j);

/// {"interval": [w0, w1], "h": h, "bodies": [...], "params": [...]}
json to_json(const Family& f);
Family family_from_json(const json& j);

/// {"dim": n, "seed": s, "directions": [[...], ...], "weights": [...]}
json to_json(const SphereGrid& g);
SphereGrid grid_from_json(const json& j);

/// One point per row, comma or whitespace separated; blank lines and lines
/// starting with '#' are skipped, as is a first row that is not numeric.
Polyline polyline_from_csv(std::istream& in);
void write_csv(std::ostream& out, const Polyline& p);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);
/// "1,0" or "1 0".
Vec parse_vec(const std::string& s);

}  // namespace dg
