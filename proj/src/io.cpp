#include "descent_geom/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dg {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, std::string("json: missing field '") + key + "'");
  return j.at(key);
}

std::vector<Vec> points_from_json(const json& arr, int dim) {
  if (!arr.is_array()) fail(ErrorKind::InvalidInput, "json: expected an array of points");
  std::vector<Vec> pts;
  for (const auto& p : arr) {
    Vec v = vec_from_json(p);
    if (v.size() != dim) fail(ErrorKind::DimensionMismatch, "json: point dimension differs from 'dim'");
    pts.push_back(v);
  }
  return pts;
}

std::vector<double> numbers(const json& arr) {
  if (!arr.is_array()) fail(ErrorKind::InvalidInput, "json: expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : arr) {
    if (!x.is_number()) fail(ErrorKind::InvalidInput, "json: expected a number");
    out.push_back(x.get<double>());
  }
  return out;
}

int dim_of(const json& j) {
  const auto& d = field(j, "dim");
  if (!d.is_number_integer()) fail(ErrorKind::InvalidInput, "json: 'dim' must be an integer");
  int n = d.get<int>();
  if (n < 1 || n > kMaxDim) fail(ErrorKind::InvalidInput, "json: 'dim' outside [1, 8]");
  return n;
}

}  // namespace

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j) {
  auto xs = numbers(j);
  if (xs.empty()) fail(ErrorKind::InvalidInput, "json: empty point");
  return Eigen::Map<const Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Vec parse_vec(const std::string& s) {
  std::string t = s;
  for (char& c : t) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(t);
  std::vector<double> xs;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "cannot parse coordinate '" + tok + "'");
    }
  }
  if (xs.empty()) fail(ErrorKind::InvalidInput, "empty vector '" + s + "'");
  Vec v = Eigen::Map<const Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  if (!all_finite(v)) fail(ErrorKind::InvalidInput, "non-finite coordinate in '" + s + "'");
  return v;
}

json to_json(const ConvexBody& k) {
  json v = json::array();
  for (const auto& p : k.vertices()) v.push_back(to_json(p));
  return {{"dim", k.dim()}, {"vertices", v}};
}

ConvexBody body_from_json(const json& j) {
  int n = dim_of(j);
  auto pts = points_from_json(field(j, "vertices"), n);
  if (pts.empty()) fail(ErrorKind::InvalidInput, "json: body without vertices");
  return hull(pts);
}

json to_json(const Polyline& p) {
  json v = json::array();
  for (const auto& x : p.points()) v.push_back(to_json(x));
  return {{"dim", p.dim()}, {"points", v}};
}

Polyline polyline_from_json(const json& j) {
  int n = dim_of(j);
  return Polyline(points_from_json(field(j, "points"), n));
}

json to_json(const Stratification& s) {
  json b = json::array();
  for (const auto& k : s.bodies) b.push_back(to_json(k));
  json out = {{"bodies", b}};
  if (s.has_params()) out["params"] = s.params;
  return out;
}

Stratification stratification_from_json(const json& j) {
  const auto& arr = field(j, "bodies");
  if (!arr.is_array()) fail(ErrorKind::InvalidInput, "json: 'bodies' must be an array");
  std::vector<ConvexBody> bodies;
  for (const auto& b : arr) bodies.push_back(body_from_json(b));
  std::vector<double> params;
  if (j.contains("params")) params = numbers(j.at("params"));
  return validate_stratification(bodies, params);
}

json to_json(const Family& f) {
  json out = to_json(f.strat);
  out["interval"] = {f.w_min(), f.w_max()};
  out["h"] = f.h;
  return out;
}

Family family_from_json(const json& j) {
  Stratification s = stratification_from_json(j);
  if (!s.has_params()) fail(ErrorKind::InvalidInput, "json: family without 'params'");
  const auto& h = field(j, "h");
  if (!h.is_number() || !(h.get<double>() > 0)) fail(ErrorKind::InvalidInput, "json: 'h' must be positive");
  auto iv = numbers(field(j, "interval"));
  const double scale = std::max(1.0, std::abs(s.params.back()));
  if (iv.size() != 2 || std::abs(iv[0] - s.params.front()) > 1e-9 * scale ||
      std::abs(iv[1] - s.params.back()) > 1e-9 * scale) {
    fail(ErrorKind::InvalidInput, "json: 'interval' does not match the params");
  }
  return Family{std::move(s), h.get<double>()};
}

json to_json(const SphereGrid& g) {
  json d = json::array();
  for (Eigen::Index i = 0; i < g.directions.cols(); ++i) d.push_back(to_json(Vec(g.directions.col(i))));
  return {{"dim", g.dim}, {"seed", g.seed}, {"directions", d}, {"weights", to_json(g.weights)}};
}

SphereGrid grid_from_json(const json& j) {
  SphereGrid g;
  g.dim = dim_of(j);
  g.seed = field(j, "seed").get<std::uint64_t>();
  auto dirs = points_from_json(field(j, "directions"), g.dim);
  auto w = numbers(field(j, "weights"));
  if (w.size() != dirs.size()) fail(ErrorKind::InvalidInput, "json: directions and weights differ in length");
  g.directions.resize(g.dim, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) g.directions.col(static_cast<Eigen::Index>(i)) = dirs[i];
  g.weights = Eigen::Map<const Vec>(w.data(), static_cast<Eigen::Index>(w.size()));
  return g;
}

Polyline polyline_from_csv(std::istream& in) {
  std::vector<Vec> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      pts.push_back(parse_vec(line));
    } catch (const GeomError&) {
      if (!first) throw;
    }
    first = false;
  }
  if (pts.empty()) fail(ErrorKind::InvalidInput, "csv: no points");
  return Polyline(pts);
}

void write_csv(std::ostream& out, const Polyline& p) {
  std::ostringstream s;
  s.precision(17);
  for (const auto& x : p.points()) {
    for (Eigen::Index i = 0; i < x.size(); ++i) s << (i ? "," : "") << x[i];
    s << '\n';
  }
  out << s.str();
}

}  // namespace dg
