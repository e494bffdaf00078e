#include "params.hpp"

#include <cmath>
#include <set>

#include "star/core/error.hpp"

namespace star::agents::detail {

std::optional<std::string> resolve_refs(Value& v, const Blackboard& bb) {
  if (v.is_object()) {
    if (v.size() == 1 && v.contains("$ref") && v["$ref"].is_string()) {
      const std::string path = v["$ref"].get<std::string>();
      auto found = bb.lookup(path);
      if (!found) return path;
      v = *found;
      return std::nullopt;
    }
    for (auto& [k, child] : v.items())
      if (auto missing = resolve_refs(child, bb)) return missing;
  } else if (v.is_array()) {
    for (auto& child : v)
      if (auto missing = resolve_refs(child, bb)) return missing;
  }
  return std::nullopt;
}

const Value& require(const Value& params, const char* name) {
  if (!params.is_object() || !params.contains(name) || params.at(name).is_null())
    throw ValidationError(std::string("missing parameter '") + name + "'");
  return params.at(name);
}

std::optional<std::string> opt_string(const Value& params, const char* name) {
  if (!params.is_object() || !params.contains(name) || !params.at(name).is_string()) return std::nullopt;
  return params.at(name).get<std::string>();
}

namespace {

double number(const Value& v, const char* what) {
  if (!v.is_number()) throw ValidationError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(std::string(what) + " must be finite");
  return d;
}

const Value* member(const Value& v, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (v.contains(n)) return &v.at(n);
  return nullptr;
}

}  // namespace

spatial::Point to_point(const Value& v, spatial::Frame frame) {
  if (v.is_array() && v.size() == 2) return {number(v[0], "coordinate"), number(v[1], "coordinate"), frame};
  if (v.is_object()) {
    const Value* lat = member(v, {"latitude", "lat"});
    const Value* lon = member(v, {"longitude", "lon", "lng"});
    if (lat && lon) return spatial::geographic(number(*lon, "longitude"), number(*lat, "latitude"));
    const Value* x = member(v, {"x"});
    const Value* y = member(v, {"y"});
    if (x && y) return {number(*x, "x"), number(*y, "y"), frame};
  }
  throw ValidationError("expected a point ([x, y] or {latitude, longitude})");
}

std::vector<spatial::Point> to_points(const Value& v, spatial::Frame frame) {
  if (!v.is_array()) throw ValidationError("expected a list of points");
  std::vector<spatial::Point> out;
  for (const auto& p : v) out.push_back(to_point(p, frame));
  return out;
}

spatial::Geometry to_geometry(const Value& coords, const std::optional<std::string>& type, spatial::Frame frame) {
  using spatial::Geometry;
  const bool single = (coords.is_array() && coords.size() == 2 && coords[0].is_number()) || coords.is_object();
  std::string kind = type.value_or("");
  for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (kind.empty()) {
    if (single) {
      kind = "point";
    } else {
      const auto pts = to_points(coords, frame);
      kind = (pts.size() >= 4 && pts.front() == pts.back()) ? "polygon" : "linestring";
    }
  }
  if (kind == "point") return Geometry::point(to_point(coords, frame));
  if (kind == "linestring" || kind == "line" || kind == "trajectory") return Geometry::line_string(to_points(coords, frame));
  if (kind == "polygon") return Geometry::polygon(to_points(coords, frame));
  throw ValidationError("unknown geometry type '" + kind + "'");
}

temporal::Interval to_interval(const Value& v) {
  temporal::Interval i;
  if (v.is_array() && v.size() == 2) {
    i = {number(v[0], "interval start"), number(v[1], "interval end")};
  } else if (v.is_object() && v.contains("start") && v.contains("end")) {
    i = {number(v["start"], "interval start"), number(v["end"], "interval end")};
  } else {
    throw ValidationError("expected an interval [start, end]");
  }
  temporal::validate(i);
  return i;
}

std::vector<temporal::Interval> to_intervals(const Value& v) {
  if (!v.is_array()) throw ValidationError("expected a list of intervals");
  if (v.size() == 2 && v[0].is_number()) return {to_interval(v)};
  std::vector<temporal::Interval> out;
  for (const auto& x : v) out.push_back(to_interval(x));
  return out;
}

std::vector<double> to_series(const Value& v) {
  if (!v.is_array()) throw ValidationError("expected a numeric series");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, "series value"));
  return out;
}

std::size_t to_count(const Value& v, const char* name) {
  if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
    throw ValidationError(std::string(name) + " must be an integer");
  const auto n = v.get<long long>();
  if (n < 0) throw ValidationError(std::string(name) + " must be non-negative");
  return static_cast<std::size_t>(n);
}

std::vector<graph::Edge> to_edges(const Value& v) {
  if (!v.is_array()) throw ValidationError("edges must be a list");
  std::vector<graph::Edge> out;
  for (const auto& e : v) {
    graph::Edge edge;
    if (e.is_array() && (e.size() == 2 || e.size() == 3)) {
      edge.from = e[0].get<graph::NodeId>();
      edge.to = e[1].get<graph::NodeId>();
      if (e.size() == 3) edge.weight = number(e[2], "edge weight");
    } else if (e.is_object()) {
      edge.from = require(e, "from").get<graph::NodeId>();
      edge.to = require(e, "to").get<graph::NodeId>();
      if (e.contains("weight")) edge.weight = number(e["weight"], "edge weight");
    } else {
      throw ValidationError("edge must be [from, to] or [from, to, weight]");
    }
    out.push_back(edge);
  }
  return out;
}

graph::DirectedGraph to_graph(const Value& edges, const Value* nodes) {
  graph::DirectedGraph g;
  g.edges = to_edges(edges);
  std::set<graph::NodeId> ids;
  if (nodes && nodes->is_array())
    for (const auto& n : *nodes) ids.insert(n.get<graph::NodeId>());
  for (const auto& e : g.edges) {
    ids.insert(e.from);
    ids.insert(e.to);
  }
  g.nodes.assign(ids.begin(), ids.end());
  return g;
}

graph::NodeSeries to_node_series(const Value& v) {
  if (!v.is_object()) throw ValidationError("series must map node ids to lists");
  graph::NodeSeries out;
  for (const auto& [k, xs] : v.items()) {
    std::size_t used = 0;
    graph::NodeId id = 0;
    try {
      id = std::stoll(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size()) throw ValidationError("series key '" + k + "' is not a node id");
    out[id] = to_series(xs);
  }
  return out;
}

Value interval_json(const temporal::Interval& i) { return Value::array({i.start, i.end}); }

}  // namespace star::agents::detail
