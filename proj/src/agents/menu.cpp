#include "star/agents/menu.hpp"

#include <algorithm>

#include "star/temporal/interval.hpp"

namespace star::agents {

std::string_view name_of(ParamKind k) noexcept {
  switch (k) {
    case ParamKind::Any: return "any";
    case ParamKind::Number: return "number";
    case ParamKind::Integer: return "integer";
    case ParamKind::Bool: return "bool";
    case ParamKind::String: return "string";
    case ParamKind::Point: return "point";
    case ParamKind::PointList: return "point list";
    case ParamKind::Interval: return "interval";
    case ParamKind::IntervalList: return "interval list";
    case ParamKind::Series: return "series";
    case ParamKind::Object: return "object";
  }
  return "any";
}

const MenuEntry* ComputationMenu::find(std::string_view name) const noexcept {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<std::string> ComputationMenu::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.name);
  return out;
}

std::string_view result_key(Agent a) noexcept {
  switch (a) {
    case Agent::Head: return "head_profile";
    case Agent::Spatial: return "spatial_data";
    case Agent::Temporal: return "temporal_data";
    case Agent::Trajectory: return "trajectory_data";
    case Agent::Topological: return "topological_data";
    case Agent::Navigation: return "navigation_data";
    case Agent::Semantic: return "semantic_data";
    case Agent::Fusion: return "fusion_answer";
  }
  return "";
}

namespace {

using K = ParamKind;

ComputationMenu build_spatial() {
  ComputationMenu m{Agent::Spatial, {}};
  const std::string key(result_key(Agent::Spatial));
  const std::vector<ParamSpec> pair = {{"geom_1", K::Any},          {"geom_1_type", K::String, false},
                                       {"geom_2", K::Any},          {"geom_2_type", K::String, false},
                                       {"timestamps", K::Series, false}, {"compute_event_interval", K::Bool, false},
                                       {"frame", K::String, false}};
  for (const char* rel : {"contains", "crosses", "intersects", "within", "touches", "overlaps", "equals"})
    m.entries.push_back({rel, pair, key});
  m.entries.push_back({"compass_direction",
                       {{"geom_1", K::Point}, {"geom_2", K::Point}, {"wedge_rule", K::String, false}},
                       key});
  m.entries.push_back({"haversine_distance", {{"geom_1", K::Point}, {"geom_2", K::Point}}, key});
  m.entries.push_back({"landmark_direction",
                       {{"geom_1", K::Any}, {"geom_2", K::Any}, {"proposed_direction", K::String, false}},
                       key});
  m.entries.push_back({"admin_region_lookup", {{"coordinates", K::Any}, {"options", K::Any}}, key});
  m.entries.push_back({"compute_event_interval",
                       {{"relation", K::String, false}, {"geom_1", K::PointList}, {"geom_2", K::PointList},
                        {"geom_2_type", K::String, false}, {"timestamps", K::Series}},
                       key});
  m.entries.push_back({"localization", {{"observations", K::Any}, {"frame", K::String, false}}, key});
  return m;
}

ComputationMenu build_temporal() {
  ComputationMenu m{Agent::Temporal, {}};
  const std::string key(result_key(Agent::Temporal));
  for (auto r : temporal::kAllenRelations)
    m.entries.push_back({"allen_" + std::string(temporal::name_of(r)),
                         {{"interval_a", K::Interval}, {"interval_b", K::Interval}},
                         key});
  m.entries.push_back({"allen_classify", {{"interval_a", K::Interval}, {"interval_b", K::Interval}}, key});
  m.entries.push_back(
      {"interval_set", {{"op", K::String}, {"sets_a", K::IntervalList}, {"sets_b", K::IntervalList, false}}, key});
  m.entries.push_back({"forecast",
                       {{"series", K::Series},
                        {"horizon", K::Integer},
                        {"period", K::Integer, false},
                        {"window", K::Integer, false}},
                       key});
  return m;
}

ComputationMenu build_trajectory() {
  ComputationMenu m{Agent::Trajectory, {}};
  const std::string key(result_key(Agent::Trajectory));
  m.entries.push_back({"trajectory_anomaly",
                       {{"trajectory", K::PointList}, {"timestamps", K::Series, false}, {"factor", K::Number, false}},
                       key});
  m.entries.push_back({"trajectory_predict",
                       {{"trajectory", K::PointList},
                        {"timestamps", K::Series, false},
                        {"horizon", K::Integer},
                        {"k", K::Integer, false}},
                       key});
  m.entries.push_back({"region_classify",
                       {{"trajectory", K::PointList}, {"timestamps", K::Series, false}, {"region", K::PointList}},
                       key});
  return m;
}

ComputationMenu build_topological() {
  ComputationMenu m{Agent::Topological, {}};
  const std::string key(result_key(Agent::Topological));
  m.entries.push_back({"analyze_topology",
                       {{"nodes", K::Any, false},
                        {"edges", K::Any},
                        {"mcq_options", K::Any, false},
                        {"series", K::Object, false}},
                       key});
  m.entries.push_back(
      {"detect_cascade",
       {{"series", K::Object}, {"edges", K::Any}, {"nodes", K::Any, false}, {"threshold", K::Number, false}},
       key});
  m.entries.push_back(
      {"pairwise_causality", {{"xs", K::Series}, {"ys", K::Series}, {"max_lag", K::Integer}}, key});
  return m;
}

ComputationMenu build_navigation() {
  ComputationMenu m{Agent::Navigation, {}};
  const std::string key(result_key(Agent::Navigation));
  m.entries.push_back({"shortest_path",
                       {{"edges", K::Any},
                        {"nodes", K::Any, false},
                        {"source", K::Integer},
                        {"target", K::Integer},
                        {"speed", K::Number, false}},
                       key});
  m.entries.push_back({"eta", {{"path", K::Any}, {"edges", K::Any}, {"speed", K::Number}}, key});
  return m;
}

}  // namespace

const ComputationMenu& menu_for(Agent a) {
  static const ComputationMenu spatial = build_spatial();
  static const ComputationMenu temporal_menu = build_temporal();
  static const ComputationMenu trajectory = build_trajectory();
  static const ComputationMenu topological = build_topological();
  static const ComputationMenu navigation = build_navigation();
  static const ComputationMenu head{Agent::Head, {}}, semantic{Agent::Semantic, {}}, fusion{Agent::Fusion, {}};
  switch (a) {
    case Agent::Spatial: return spatial;
    case Agent::Temporal: return temporal_menu;
    case Agent::Trajectory: return trajectory;
    case Agent::Topological: return topological;
    case Agent::Navigation: return navigation;
    case Agent::Head: return head;
    case Agent::Semantic: return semantic;
    case Agent::Fusion: return fusion;
  }
  return semantic;
}

}  // namespace star::agents
