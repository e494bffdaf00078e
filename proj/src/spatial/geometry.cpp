#include "star/spatial/geometry.hpp"

#include <cmath>
#include <string>

#include "star/core/error.hpp"

namespace star::spatial {

std::string_view name_of(GeometryKind k) noexcept {
  switch (k) {
    case GeometryKind::Point: return "point";
    case GeometryKind::LineString: return "linestring";
    case GeometryKind::Polygon: return "polygon";
  }
  return "point";
}

int Geometry::dimension() const noexcept {
  switch (kind) {
    case GeometryKind::Point: return 0;
    case GeometryKind::LineString: return 1;
    case GeometryKind::Polygon: return 2;
  }
  return 0;
}

namespace {

void check_point(const Point& p, Frame frame) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("geometry: non-finite coordinate");
  if (p.frame != frame) throw ValidationError("geometry: mixed coordinate frames");
  if (frame == Frame::Geographic && (p.x < -180.0 || p.x > 180.0 || p.y < -90.0 || p.y > 90.0))
    throw ValidationError("geometry: geographic coordinate out of range");
}

}  // namespace

void validate(const Geometry& g) {
  if (g.vertices.empty()) throw ValidationError("geometry: no vertices");
  const Frame frame = g.frame();
  for (const auto& p : g.vertices) check_point(p, frame);
  switch (g.kind) {
    case GeometryKind::Point:
      if (g.vertices.size() != 1) throw ValidationError("point: expected exactly one vertex");
      break;
    case GeometryKind::LineString: {
      if (g.vertices.size() < 2) throw ValidationError("linestring: needs at least 2 vertices");
      bool moves = false;
      for (std::size_t i = 1; i < g.vertices.size(); ++i) moves |= !(g.vertices[i].x == g.vertices[0].x && g.vertices[i].y == g.vertices[0].y);
      if (!moves) throw ValidationError("linestring: all vertices coincide");
      break;
    }
    case GeometryKind::Polygon: {
      const auto& v = g.vertices;
      if (v.size() < 4) throw ValidationError("polygon: needs at least 4 vertices (closed ring)");
      if (v.front().x != v.back().x || v.front().y != v.back().y) throw ValidationError("polygon: ring is not closed");
      double area2 = 0.0;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) area2 += v[i].x * v[i + 1].y - v[i + 1].x * v[i].y;
      if (area2 == 0.0) throw ValidationError("polygon: ring has zero area");
      break;
    }
  }
}

void validate(const TimedTrajectory& traj) {
  if (traj.points.size() != traj.timestamps.size())
    throw ValidationError("trajectory: " + std::to_string(traj.points.size()) + " points but " +
                          std::to_string(traj.timestamps.size()) + " timestamps");
  if (traj.points.empty()) throw ValidationError("trajectory: empty");
  const Frame frame = traj.points.front().frame;
  for (const auto& p : traj.points) check_point(p, frame);
  for (std::size_t i = 1; i < traj.timestamps.size(); ++i)
    if (!(traj.timestamps[i] > traj.timestamps[i - 1])) throw ValidationError("trajectory: timestamps must strictly increase");
}

}  // namespace star::spatial
