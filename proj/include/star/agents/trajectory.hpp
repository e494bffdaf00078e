#pragma once

#include <cstddef>
#include <vector>

#include "star/spatial/geometry.hpp"
#include "star/spatial/predicates.hpp"

namespace star::agents {

// Indices i whose step from point i-1 exceeds factor x the median step.
// Throws InsufficientDataError below 3 points.
std::vector<std::size_t> trajectory_anomalies(const spatial::TimedTrajectory& traj, double factor = 3.0);

struct TrajectoryForecast {
  std::vector<spatial::Point> points;
  std::vector<double> timestamps;
};

// Least-squares linear motion over the last k points, extrapolated `horizon`
// steps at the mean recent sampling interval.
TrajectoryForecast trajectory_predict(const spatial::TimedTrajectory& traj, std::size_t horizon, std::size_t k = 3);

struct RegionMembership {
  bool within = false;              // whole trajectory within the region
  double inside_fraction = 0.0;     // share of vertices within
  spatial::EventInterval event;     // per-vertex within interval
};

RegionMembership trajectory_region(const spatial::TimedTrajectory& traj, const spatial::Geometry& region);

}  // namespace star::agents
