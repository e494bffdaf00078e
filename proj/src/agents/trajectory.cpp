#include "star/agents/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "star/core/error.hpp"
#include "star/spatial/geodesy.hpp"

namespace star::agents {

namespace {

void need_three(const spatial::TimedTrajectory& traj) {
  spatial::validate(traj);
  if (traj.points.size() < 3) throw InsufficientDataError("trajectory needs at least 3 points");
}

double step(const spatial::Point& a, const spatial::Point& b) {
  if (a.frame == spatial::Frame::Geographic) return spatial::haversine_distance(a, b);
  return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

std::vector<std::size_t> trajectory_anomalies(const spatial::TimedTrajectory& traj, double factor) {
  need_three(traj);
  if (!(factor > 0.0)) throw ContractError("anomaly factor must be positive");
  std::vector<double> steps;
  for (std::size_t i = 1; i < traj.points.size(); ++i) steps.push_back(step(traj.points[i - 1], traj.points[i]));
  std::vector<double> sorted = steps;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i] > factor * median) out.push_back(i + 1);
  return out;
}

TrajectoryForecast trajectory_predict(const spatial::TimedTrajectory& traj, std::size_t horizon, std::size_t k) {
  need_three(traj);
  if (horizon == 0) throw ContractError("horizon must be positive");
  if (k < 2) throw ContractError("k must be at least 2");
  const std::size_t n = traj.points.size();
  k = std::min(k, n);
  const std::size_t first = n - k;

  // Least squares x(t), y(t) over the last k samples.
  double mt = 0, mx = 0, my = 0;
  for (std::size_t i = first; i < n; ++i) {
    mt += traj.timestamps[i];
    mx += traj.points[i].x;
    my += traj.points[i].y;
  }
  mt /= static_cast<double>(k);
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double stt = 0, stx = 0, sty = 0;
  for (std::size_t i = first; i < n; ++i) {
    const double dt = traj.timestamps[i] - mt;
    stt += dt * dt;
    stx += dt * (traj.points[i].x - mx);
    sty += dt * (traj.points[i].y - my);
  }
  const double vx = stx / stt, vy = sty / stt;
  const double dt = (traj.timestamps[n - 1] - traj.timestamps[first]) / static_cast<double>(k - 1);

  TrajectoryForecast f;
  const auto frame = traj.points.front().frame;
  for (std::size_t h = 1; h <= horizon; ++h) {
    const double t = traj.timestamps[n - 1] + dt * static_cast<double>(h);
    f.timestamps.push_back(t);
    f.points.push_back({mx + vx * (t - mt), my + vy * (t - mt), frame});
  }
  return f;
}

RegionMembership trajectory_region(const spatial::TimedTrajectory& traj, const spatial::Geometry& region) {
  spatial::validate(traj);
  if (traj.points.empty()) throw InsufficientDataError("empty trajectory");
  RegionMembership m;
  std::size_t inside = 0;
  for (const auto& p : traj.points)
    if (spatial::spatial_predicate(spatial::Relation::Within, spatial::Geometry::point(p), region)) ++inside;
  m.inside_fraction = static_cast<double>(inside) / static_cast<double>(traj.points.size());
  const auto whole = traj.points.size() == 1 ? spatial::Geometry::point(traj.points[0])
                                             : spatial::Geometry::line_string(traj.points);
  m.within = spatial::spatial_predicate(spatial::Relation::Within, whole, region);
  m.event = spatial::predicate_with_event_interval(spatial::Relation::Within, traj, region);
  return m;
}

}  // namespace star::agents
