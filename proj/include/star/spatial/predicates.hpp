#pragma once

#include <optional>
#include <string_view>

#include "star/spatial/geometry.hpp"
#include "star/temporal/interval.hpp"

namespace star::spatial {

enum class Relation { Contains, Crosses, Intersects, Within, Touches, Overlaps, Equals };

std::string_view name_of(Relation r) noexcept;
// Throws ContractError on unknown names.
Relation parse_relation(std::string_view name);

enum class Location { Interior, Boundary, Exterior };

// Where p sits relative to g (DE-9IM sense: a LineString's boundary is its
// two endpoints unless it is closed).
Location locate(Point p, const Geometry& g);

// Named DE-9IM predicate in the planar coordinate space of the inputs.
// Validates both geometries and throws ValidationError on bad input or
// mixed frames.
bool spatial_predicate(Relation relation, const Geometry& a, const Geometry& b);

struct EventInterval {
  bool holds = false;
  std::optional<temporal::Interval> interval;
};

// Evaluates relation(vertex, g) per trajectory vertex and projects the first
// and last satisfying vertex to their timestamps.
EventInterval predicate_with_event_interval(Relation relation, const TimedTrajectory& traj, const Geometry& g);

}  // namespace star::spatial
