#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "star/spatial/geometry.hpp"

namespace star::spatial {

inline constexpr double kEarthRadiusM = 6371000.0;

// Great-circle initial bearing, degrees clockwise from north in [0, 360).
// Throws UndefinedError when p == q, ValidationError for non-geographic input.
double compass_bearing(Point p, Point q);

enum class WedgeRule {
  Symmetric,  // eight 45-degree wedges centred on the compass points
  Compat,     // North widened to [-33.75, 33.75); NE and NW shrink to match
};

// 1 = North, 2 = Northeast, ... 8 = Northwest.
int bearing_to_wedge(double deg, WedgeRule rule = WedgeRule::Symmetric);
std::string_view wedge_name(int wedge);

// Great-circle distance in metres.
double haversine_distance(Point p, Point q);

struct Observation {
  Point anchor;
  std::optional<double> bearing_deg;  // clockwise from north (+y)
  std::optional<double> range;        // metres (geographic) or units (planar)
};

struct Fix {
  Point point;
  double residual = 0.0;  // root sum of squared residuals, metres or units
};

// Least-squares position from bearing/range observations. Geographic input
// is solved in a local equirectangular frame around the anchors' centroid.
// Throws NoSolutionError for degenerate configurations (parallel bearings,
// concentric ranges) and ContractError when fewer than two constraints exist.
Fix localize(const std::vector<Observation>& observations);

}  // namespace star::spatial
