#pragma once

// Conversions from selection parameters to tool inputs. Internal to agents.

#include <optional>
#include <string>
#include <vector>

#include "star/core/blackboard.hpp"
#include "star/core/value.hpp"
#include "star/graph/graph.hpp"
#include "star/spatial/geometry.hpp"
#include "star/temporal/interval.hpp"

namespace star::agents::detail {

// Replaces every {"$ref": "key.path"} in v with the board value. Returns the
// first unresolved path, if any (v is then partially substituted).
std::optional<std::string> resolve_refs(Value& v, const Blackboard& bb);

const Value& require(const Value& params, const char* name);
std::optional<std::string> opt_string(const Value& params, const char* name);

spatial::Point to_point(const Value& v, spatial::Frame frame);
std::vector<spatial::Point> to_points(const Value& v, spatial::Frame frame);
spatial::Geometry to_geometry(const Value& coords, const std::optional<std::string>& type, spatial::Frame frame);
temporal::Interval to_interval(const Value& v);
std::vector<temporal::Interval> to_intervals(const Value& v);
std::vector<double> to_series(const Value& v);
std::size_t to_count(const Value& v, const char* name);

std::vector<graph::Edge> to_edges(const Value& v);
graph::DirectedGraph to_graph(const Value& edges, const Value* nodes);
graph::NodeSeries to_node_series(const Value& v);

Value interval_json(const temporal::Interval& i);

}  // namespace star::agents::detail
