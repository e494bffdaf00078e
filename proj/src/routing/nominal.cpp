#include "star/routing/nominal.hpp"

#include <string>
#include <string_view>
#include <utility>

#include "star/core/error.hpp"

namespace star {

NominalRouteTable::NominalRouteTable(std::shared_ptr<const Taxonomy> taxonomy)
    : taxonomy_(std::move(taxonomy)), paths_(taxonomy_->slot_count()) {}

namespace {

using A = Agent;

struct Route {
  std::string_view type;
  std::vector<Agent> specialists;
};

// Expert routes: the specialists each task type needs, in dependency order.
// Producers of intermediate results come before their consumers (SPATIAL
// emits the event interval TEMPORAL reads; TRAJECTORY feeds SEMANTIC).
const std::vector<Route>& expert_routes() {
  static const std::vector<Route> routes = {
      {"STARK_SPATIAL_IMPUTE", {A::Spatial}},
      {"STARK_TEMPORAL_IMPUTE", {A::Temporal}},
      {"STARK_SPATIOTEMPORAL_IMPUTE", {A::Spatial, A::Temporal}},
      {"STARK_SPATIAL_LOCALIZATION", {A::Spatial}},
      {"STARK_TEMPORAL_LOCALIZATION", {A::Temporal}},
      {"STARK_SPATIAL_TRACKING", {A::Trajectory}},
      {"STARK_TEMPORAL_TRACKING", {A::Temporal}},
      {"STARK_SPATIOTEMPORAL_FORECAST", {A::Trajectory, A::Temporal}},
      {"STARK_SPATIAL_RELATIONSHIP", {A::Spatial}},
      {"STARK_TEMPORAL_RELATIONSHIP", {A::Temporal}},
      {"STARK_SPATIOTEMPORAL_RELATIONSHIP", {A::Spatial, A::Temporal}},
      {"STARK_LANDMARK_PROXIMITY", {A::Spatial}},
      {"STARK_LANDMARK_DIRECTION", {A::Spatial}},
      {"STARK_INTENT_PREDICTION", {A::Trajectory, A::Semantic}},
      {"STARK_POI_PREDICTION", {A::Trajectory, A::Semantic}},
      {"STARK_ROUTE_PLANNING", {A::Navigation}},
      {"STARK_ROUTE_SEGMENT_DURATION", {A::Navigation}},
      {"STARK_ETA_CALCULATION", {A::Navigation}},
      {"STBENCH_DIRECTION_DETERMINATION", {A::Spatial}},
      {"STBENCH_FLOW_PREDICTION", {A::Temporal}},
      {"STBENCH_NAVIGATION", {A::Navigation}},
      {"STBENCH_ADMIN_REGION", {A::Spatial}},
      {"STBENCH_POINT_REGION", {A::Spatial}},
      {"STBENCH_POINT_TRAJECTORY", {A::Spatial}},
      {"STBENCH_TRAJECTORY_REGION", {A::Trajectory}},
      {"STBENCH_TRAJECTORY_ANOMALY", {A::Trajectory}},
      {"STBENCH_TRAJECTORY_PREDICTION", {A::Trajectory}},
      {"STBENCH_TRAJECTORY_TRAJECTORY", {A::Trajectory, A::Spatial}},
      {"STBENCH_POI_CATEGORY_RECOGNITION", {A::Semantic}},
      {"STBENCH_URBAN_REGION_FUNCTION", {A::Semantic}},
      {"STBENCH_GENERAL", {A::Semantic}},
      {"ST_BENCH_NEW_CORRELATION", {A::Topological}},
      {"ST_BENCH_NEW_ENTITY", {A::Topological, A::Semantic}},
      {"ST_BENCH_NEW_ETIOLOGICAL", {A::Topological}},
      {"ST_BENCH_NEW_FORECASTING", {A::Temporal}},
  };
  return routes;
}

}  // namespace

NominalRouteTable NominalRouteTable::builtin(std::shared_ptr<const Taxonomy> taxonomy) {
  NominalRouteTable table(std::move(taxonomy));
  for (const auto& route : expert_routes()) {
    auto t = table.taxonomy().find(route.type);
    if (!t) continue;
    std::vector<Agent> path{Agent::Head};
    path.insert(path.end(), route.specialists.begin(), route.specialists.end());
    path.push_back(Agent::Fusion);
    table.set_path(*t, std::move(path));
  }
  return table;
}

void NominalRouteTable::set_path(TaskType t, std::vector<Agent> path) {
  if (t.index >= paths_.size()) throw ContractError("nominal route: task type out of range");
  const std::string label(taxonomy_->name(t));
  if (path.size() < 2 || path.front() != Agent::Head || path.back() != Agent::Fusion)
    throw ValidationError("nominal route for " + label + " must run HEAD -> ... -> FUSION");
  if (path.size() > kSpecialists.size() + 2)
    throw ValidationError("nominal route for " + label + " is longer than the pool");
  AgentSet seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Agent a = path[i];
    if (seen.contains(a)) throw ValidationError("nominal route for " + label + " revisits " + std::string(name_of(a)));
    if (i > 0 && i + 1 < path.size() && !is_specialist(a))
      throw ValidationError("nominal route for " + label + " passes through a non-specialist");
    seen.insert(a);
  }
  paths_[t.index] = std::move(path);
}

const std::vector<Agent>* NominalRouteTable::path(TaskType t) const {
  if (t.index >= paths_.size() || paths_[t.index].empty()) return nullptr;
  return &paths_[t.index];
}

std::optional<Agent> NominalRouteTable::successor(TaskType t, Agent from) const {
  const auto* p = path(t);
  if (p == nullptr) return std::nullopt;
  for (std::size_t i = 0; i + 1 < p->size(); ++i)
    if ((*p)[i] == from) return (*p)[i + 1];
  return std::nullopt;
}

}  // namespace star
