#pragma once

#include <string_view>
#include <vector>

namespace star::spatial {

enum class Frame { Geographic, Planar };

// x is longitude and y latitude in the geographic frame.
struct Point {
  double x = 0.0;
  double y = 0.0;
  Frame frame = Frame::Planar;

  bool operator==(const Point&) const = default;
};

inline Point planar(double x, double y) { return {x, y, Frame::Planar}; }
inline Point geographic(double lon, double lat) { return {lon, lat, Frame::Geographic}; }

enum class GeometryKind { Point, LineString, Polygon };

std::string_view name_of(GeometryKind k) noexcept;

// Simple geometry. Polygons are a single explicitly closed shell (first
// vertex repeated last); holes are not modelled.
struct Geometry {
  GeometryKind kind = GeometryKind::Point;
  std::vector<Point> vertices;

  static Geometry point(Point p) { return {GeometryKind::Point, {p}}; }
  static Geometry line_string(std::vector<Point> pts) { return {GeometryKind::LineString, std::move(pts)}; }
  static Geometry polygon(std::vector<Point> ring) { return {GeometryKind::Polygon, std::move(ring)}; }

  int dimension() const noexcept;
  Frame frame() const noexcept { return vertices.empty() ? Frame::Planar : vertices.front().frame; }

  bool operator==(const Geometry&) const = default;
};

// Throws ValidationError: wrong vertex count, open or degenerate ring,
// geographic coordinates out of range, mixed frames, non-finite values.
void validate(const Geometry& g);

struct TimedTrajectory {
  std::vector<Point> points;
  std::vector<double> timestamps;
};

// Throws ValidationError unless lengths match and timestamps strictly increase.
void validate(const TimedTrajectory& traj);

}  // namespace star::spatial
