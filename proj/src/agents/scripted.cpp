#include <regex>
#include <string>

#include "star/agents/extractors.hpp"
#include "star/agents/text.hpp"

namespace star::agents {

namespace {

enum class Template { None, Direction, AdminRegion, SpatiotemporalRelation, LandmarkDirection, Etiological };

const std::regex kDirection(
    R"(A has a longitude of\s*([-\d.]+)\s*and a latitude of\s*([-\d.]+),\s*while B has a longitude of\s*([-\d.]+)\s*and a latitude of\s*([-\d.]+))");
const std::regex kAdmin(R"xx("latitude":\s*([-\d.]+),\s*"longitude":\s*([-\d.]+),\s*"options":\s*"([^"]*)")xx");
const std::regex kEvent(
    R"(temporal relationship\s+(\w+)\s+with the reference interval\s*\(\s*([-\d.]+)\s*,\s*([-\d.]+)\s*\))");
const std::regex kEventSpatial(R"(spatial relationship\s+(\w+)\s+with\s+(Polygon|LineString|Point)\s*\[([^\]]*)\])",
                               std::regex::icase);
const std::regex kTrajectory(R"(Object trajectory:\s*\[([^\]]*)\])");
const std::regex kTimestamps(R"(Timestamp:\s*\[([^\]]*)\])");
const std::regex kLandmark(
    R"(spatial relationship between\s+(.+?)\s+and\s+(.+?)\s+is\s+([a-z\- ]+?)\s*,\s*selecting from the options)");

Template detect(const std::string& s) {
  std::smatch m;
  if (std::regex_search(s, m, kDirection)) return Template::Direction;
  if (std::regex_search(s, m, kAdmin)) return Template::AdminRegion;
  if (std::regex_search(s, m, kEvent) && std::regex_search(s, m, kEventSpatial)) return Template::SpatiotemporalRelation;
  if (std::regex_search(s, m, kLandmark)) return Template::LandmarkDirection;
  if (s.find("Graph Structure:") != std::string::npos && s.find("Options:") != std::string::npos)
    return Template::Etiological;
  return Template::None;
}

Value pairs(const std::string& text) {
  const auto xs = parse_numbers(text);
  Value out = Value::array();
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) out.push_back(Value::array({xs[i], xs[i + 1]}));
  return out;
}

}  // namespace

std::optional<Value> ScriptedExtractor::profile(const Query& q) {
  switch (detect(q.text)) {
    case Template::Direction:
      return Value{{"task_type", "STBENCH_DIRECTION_DETERMINATION"}, {"benchmark", "STBench"}};
    case Template::AdminRegion: return Value{{"task_type", "STBENCH_ADMIN_REGION"}, {"benchmark", "STBench"}};
    case Template::SpatiotemporalRelation:
      return Value{{"task_type", "STARK_SPATIOTEMPORAL_RELATIONSHIP"}, {"benchmark", "STARK"}};
    case Template::LandmarkDirection:
      return Value{{"task_type", "STARK_LANDMARK_DIRECTION"}, {"benchmark", "STARK"}};
    case Template::Etiological:
      return Value{{"task_type", "ST_BENCH_NEW_ETIOLOGICAL"}, {"benchmark", "ST-Bench-new"}};
    case Template::None: break;
  }
  return std::nullopt;
}

MenuSelection ScriptedExtractor::select(Agent a, const Query& q, const Blackboard&, const ComputationMenu&) {
  const std::string& s = q.text;
  std::smatch m;
  MenuSelection sel;
  switch (detect(s)) {
    case Template::Direction:
      if (a != Agent::Spatial || !std::regex_search(s, m, kDirection)) break;
      sel.operation = "compass_direction";
      sel.params = {{"geom_1", Value::array({std::stod(m[1]), std::stod(m[2])})},
                    {"geom_2", Value::array({std::stod(m[3]), std::stod(m[4])})}};
      break;
    case Template::AdminRegion:
      if (a != Agent::Spatial || !std::regex_search(s, m, kAdmin)) break;
      sel.operation = "admin_region_lookup";
      sel.params = {{"coordinates", Value::array({{{"latitude", std::stod(m[1])}, {"longitude", std::stod(m[2])}}})},
                    {"options", m[3].str()}};
      break;
    case Template::SpatiotemporalRelation: {
      if (a == Agent::Spatial) {
        std::smatch traj, ts;
        if (!std::regex_search(s, m, kEventSpatial) || !std::regex_search(s, traj, kTrajectory) ||
            !std::regex_search(s, ts, kTimestamps))
          break;
        std::string kind = m[2].str();
        for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        sel.operation = m[1].str();
        sel.params = {{"geom_1", pairs(traj[1].str())}, {"geom_1_type", "linestring"},
                      {"geom_2", kind == "point" ? pairs(m[3].str())[0] : pairs(m[3].str())},
                      {"geom_2_type", kind},
                      {"timestamps", parse_numbers(ts[1].str())},
                      {"compute_event_interval", true}};
      } else if (a == Agent::Temporal) {
        if (!std::regex_search(s, m, kEvent)) break;
        sel.operation = "allen_" + m[1].str();
        sel.params = {{"interval_a", {{"$ref", "spatial_data.event_interval"}}},
                      {"interval_b", Value::array({std::stod(m[2]), std::stod(m[3])})}};
      }
      break;
    }
    case Template::LandmarkDirection:
      if (a != Agent::Spatial || !std::regex_search(s, m, kLandmark)) break;
      sel.operation = "landmark_direction";
      sel.params = {{"geom_1", m[1].str()}, {"geom_2", m[2].str()}, {"proposed_direction", m[3].str()}};
      break;
    case Template::Etiological: {
      if (a != Agent::Topological) break;
      const auto g = parse_graph_text(s);
      Value edges = Value::array();
      for (const auto& e : g.edges) edges.push_back(Value::array({e.from, e.to}));
      Value series = Value::object();
      for (const auto& [id, xs] : parse_node_series(s)) series[std::to_string(id)] = xs;
      sel.operation = "analyze_topology";
      sel.params = {{"nodes", g.nodes}, {"edges", std::move(edges)},
                    {"mcq_options", s.substr(s.find("Options:"))}};
      if (!series.empty()) sel.params["series"] = std::move(series);
      break;
    }
    case Template::None: break;
  }
  return sel;
}

std::optional<std::string> ScriptedExtractor::answer(Agent, const Query&, const Blackboard&, const QueryProfile&) {
  return std::nullopt;
}

}  // namespace star::agents
