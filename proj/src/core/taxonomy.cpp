#include "star/core/taxonomy.hpp"

#include "star/core/error.hpp"

namespace star {

Taxonomy::Taxonomy(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty() || names_[i] == kOpenTaskType)
      throw ValidationError("taxonomy: reserved or empty task type name at index " + std::to_string(i));
    auto [it, inserted] = lookup_.emplace(names_[i], static_cast<std::uint32_t>(i));
    if (!inserted) throw ValidationError("taxonomy: duplicate task type " + names_[i]);
  }
}

std::shared_ptr<const Taxonomy> Taxonomy::builtin() {
  static const auto instance = std::make_shared<const Taxonomy>(std::vector<std::string>{
      // STARK
      "STARK_SPATIAL_IMPUTE",
      "STARK_TEMPORAL_IMPUTE",
      "STARK_SPATIOTEMPORAL_IMPUTE",
      "STARK_SPATIAL_LOCALIZATION",
      "STARK_TEMPORAL_LOCALIZATION",
      "STARK_SPATIAL_TRACKING",
      "STARK_TEMPORAL_TRACKING",
      "STARK_SPATIOTEMPORAL_FORECAST",
      "STARK_SPATIAL_RELATIONSHIP",
      "STARK_TEMPORAL_RELATIONSHIP",
      "STARK_SPATIOTEMPORAL_RELATIONSHIP",
      "STARK_LANDMARK_PROXIMITY",
      "STARK_LANDMARK_DIRECTION",
      "STARK_INTENT_PREDICTION",
      "STARK_POI_PREDICTION",
      "STARK_ROUTE_PLANNING",
      "STARK_ROUTE_SEGMENT_DURATION",
      "STARK_ETA_CALCULATION",
      // STBench
      "STBENCH_DIRECTION_DETERMINATION",
      "STBENCH_FLOW_PREDICTION",
      "STBENCH_NAVIGATION",
      "STBENCH_ADMIN_REGION",
      "STBENCH_POINT_REGION",
      "STBENCH_POINT_TRAJECTORY",
      "STBENCH_TRAJECTORY_REGION",
      "STBENCH_TRAJECTORY_ANOMALY",
      "STBENCH_TRAJECTORY_PREDICTION",
      "STBENCH_TRAJECTORY_TRAJECTORY",
      "STBENCH_POI_CATEGORY_RECOGNITION",
      "STBENCH_URBAN_REGION_FUNCTION",
      "STBENCH_GENERAL",
      // ST-Bench (2026)
      "ST_BENCH_NEW_CORRELATION",
      "ST_BENCH_NEW_ENTITY",
      "ST_BENCH_NEW_ETIOLOGICAL",
      "ST_BENCH_NEW_FORECASTING",
  });
  return instance;
}

std::optional<TaskType> Taxonomy::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return TaskType{it->second};
}

TaskType Taxonomy::resolve(std::string_view name) const { return find(name).value_or(open()); }

TaskType Taxonomy::require(std::string_view name) const {
  if (auto t = find(name)) return *t;
  throw ContractError("unregistered task type: " + std::string(name));
}

std::string_view Taxonomy::name(TaskType t) const {
  if (t.index < names_.size()) return names_[t.index];
  if (t.index == names_.size()) return kOpenTaskType;
  throw ContractError("task type index out of range: " + std::to_string(t.index));
}

}  // namespace star
