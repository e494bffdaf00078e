#include "star/spatial/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "star/core/error.hpp"
#include "star/simd/kernels.hpp"

namespace star::spatial {

namespace {

constexpr std::array<std::pair<Relation, std::string_view>, 7> kRelationNames = {{
    {Relation::Contains, "contains"},
    {Relation::Crosses, "crosses"},
    {Relation::Intersects, "intersects"},
    {Relation::Within, "within"},
    {Relation::Touches, "touches"},
    {Relation::Overlaps, "overlaps"},
    {Relation::Equals, "equals"},
}};

struct Seg {
  Point p0, p1;
};

double orient(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

std::vector<Seg> segments(const Geometry& g) {
  std::vector<Seg> out;
  if (g.kind == GeometryKind::Point) return out;
  for (std::size_t i = 0; i + 1 < g.vertices.size(); ++i) {
    const Point& a = g.vertices[i];
    const Point& b = g.vertices[i + 1];
    if (a.x == b.x && a.y == b.y) continue;
    out.push_back({a, b});
  }
  return out;
}

bool same(const Point& a, const Point& b, double tol) { return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol; }

// Distance from p to the closed segment is within tol.
bool on_segment(const Point& p, const Seg& s, double tol) {
  const double dx = s.p1.x - s.p0.x, dy = s.p1.y - s.p0.y;
  const double len2 = dx * dx + dy * dy;
  double t = ((p.x - s.p0.x) * dx + (p.y - s.p0.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = s.p0.x + t * dx - p.x, cy = s.p0.y + t * dy - p.y;
  return cx * cx + cy * cy <= tol * tol;
}

bool is_closed_line(const Geometry& g) {
  return g.kind == GeometryKind::LineString && g.vertices.front().x == g.vertices.back().x &&
         g.vertices.front().y == g.vertices.back().y;
}

double tolerance_for(const Geometry& a, const Geometry& b) {
  double m = 1.0;
  for (const auto* g : {&a, &b})
    for (const auto& p : g->vertices) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return 1e-12 * m;
}

// A point of `owner` used to probe the other geometry.
struct Sample {
  Point p;
  bool on_owner_boundary = false;
  bool midpoint = false;             // represents an open sub-segment
  std::optional<Location> known;     // exact location when computed from an intersection
};

std::vector<Location> locate_all(const std::vector<Sample>& samples, const Geometry& g, double tol) {
  std::vector<Location> out(samples.size(), Location::Exterior);
  switch (g.kind) {
    case GeometryKind::Point:
      for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = samples[i].known ? *samples[i].known
                                  : (same(samples[i].p, g.vertices[0], tol) ? Location::Interior : Location::Exterior);
      return out;
    case GeometryKind::LineString: {
      const auto segs = segments(g);
      const bool closed = is_closed_line(g);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].known) {
          out[i] = *samples[i].known;
          continue;
        }
        const Point& p = samples[i].p;
        if (!closed && (same(p, g.vertices.front(), tol) || same(p, g.vertices.back(), tol))) {
          out[i] = Location::Boundary;
          continue;
        }
        for (const auto& s : segs)
          if (on_segment(p, s, tol)) {
            out[i] = Location::Interior;
            break;
          }
      }
      return out;
    }
    case GeometryKind::Polygon: {
      const auto segs = segments(g);
      std::vector<std::size_t> pending;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].known) {
          out[i] = *samples[i].known;
          continue;
        }
        bool boundary = false;
        for (const auto& s : segs)
          if (on_segment(samples[i].p, s, tol)) {
            boundary = true;
            break;
          }
        if (boundary)
          out[i] = Location::Boundary;
        else
          pending.push_back(i);
      }
      if (pending.empty()) return out;
      std::vector<double> px(pending.size()), py(pending.size()), rx, ry;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        px[k] = samples[pending[k]].p.x;
        py[k] = samples[pending[k]].p.y;
      }
      for (const auto& v : g.vertices) {
        rx.push_back(v.x);
        ry.push_back(v.y);
      }
      std::vector<std::uint8_t> parity(pending.size());
      simd::ring_crossing_parity(px, py, rx, ry, parity);
      for (std::size_t k = 0; k < pending.size(); ++k)
        out[pending[k]] = parity[k] ? Location::Interior : Location::Exterior;
      return out;
    }
  }
  return out;
}

// Samples of `owner` dense enough that every open piece of owner between two
// consecutive samples has a single location relative to `other`.
std::vector<Sample> samples_of(const Geometry& owner, const Geometry& other, double tol) {
  std::vector<Sample> out;
  if (owner.kind == GeometryKind::Point) {
    out.push_back({owner.vertices[0], false, false, std::nullopt});
    return out;
  }
  const bool polygon = owner.kind == GeometryKind::Polygon;
  const bool closed = polygon || is_closed_line(owner);
  const auto segs = segments(owner);
  const auto other_segs = segments(other);
  const Location crossing_loc = other.kind == GeometryKind::Polygon ? Location::Boundary : Location::Interior;

  for (std::size_t si = 0; si < segs.size(); ++si) {
    const Seg& s = segs[si];
    const double dx = s.p1.x - s.p0.x, dy = s.p1.y - s.p0.y;
    const double len2 = dx * dx + dy * dy;
    struct Split {
      double t;
      Point p;
      std::optional<Location> known;
    };
    std::vector<Split> splits;
    for (const auto& q : other_segs) {
      const double d1 = orient(q.p0, q.p1, s.p0), d2 = orient(q.p0, q.p1, s.p1);
      const double d3 = orient(s.p0, s.p1, q.p0), d4 = orient(s.p0, s.p1, q.p1);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        const double t = d1 / (d1 - d2);
        splits.push_back({t, Point{s.p0.x + t * dx, s.p0.y + t * dy, s.p0.frame}, crossing_loc});
      }
    }
    for (const auto& v : other.vertices)
      if (on_segment(v, s, tol)) splits.push_back({((v.x - s.p0.x) * dx + (v.y - s.p0.y) * dy) / len2, v, std::nullopt});

    std::sort(splits.begin(), splits.end(), [](const Split& a, const Split& b) { return a.t < b.t; });
    const bool first_is_boundary = polygon || (!closed && si == 0);
    out.push_back({s.p0, first_is_boundary, false, std::nullopt});
    Point prev = s.p0;
    for (const auto& sp : splits) {
      if (same(sp.p, prev, tol) || same(sp.p, s.p1, tol)) continue;
      out.push_back({Point{(prev.x + sp.p.x) / 2, (prev.y + sp.p.y) / 2, prev.frame}, polygon, true, std::nullopt});
      out.push_back({sp.p, polygon, false, sp.known});
      prev = sp.p;
    }
    out.push_back({Point{(prev.x + s.p1.x) / 2, (prev.y + s.p1.y) / 2, prev.frame}, polygon, true, std::nullopt});
  }
  if (!segs.empty()) {
    const bool last_is_boundary = polygon || !closed;
    out.push_back({segs.back().p1, last_is_boundary, false, std::nullopt});
  }
  return out;
}

struct Matrix {
  bool intersects = false;
  bool ii = false;
  int ii_dim = -1;
  bool ie_ab = false;  // interior(a) meets exterior(b)
  bool ie_ba = false;
  bool covered_ab = false;  // a lies in the closure of b
  bool covered_ba = false;
};

struct Side {
  bool interior_hits_interior = false;  // an interior sample lands in the other's interior
  bool midpoint_hits_interior = false;
  bool any_hits_interior = false;
  bool any_touches = false;             // any sample not exterior
  bool interior_hits_exterior = false;
  bool any_exterior = false;
  bool all_on_boundary = true;
};

Side summarize(const std::vector<Sample>& samples, const std::vector<Location>& locs) {
  Side s;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Location l = locs[i];
    const bool interior_part = !samples[i].on_owner_boundary;
    if (l != Location::Exterior) s.any_touches = true;
    if (l == Location::Exterior) s.any_exterior = true;
    if (l != Location::Boundary) s.all_on_boundary = false;
    if (l == Location::Interior) {
      s.any_hits_interior = true;
      if (interior_part) s.interior_hits_interior = true;
      if (interior_part && samples[i].midpoint) s.midpoint_hits_interior = true;
    }
    if (l == Location::Exterior && interior_part) s.interior_hits_exterior = true;
  }
  return s;
}

Matrix relate(const Geometry& a, const Geometry& b) {
  validate(a);
  validate(b);
  if (a.frame() != b.frame()) throw ValidationError("spatial predicate: geometries use different frames");
  const double tol = tolerance_for(a, b);
  const auto sa = samples_of(a, b, tol);
  const auto sb = samples_of(b, a, tol);
  const Side A = summarize(sa, locate_all(sa, b, tol));
  const Side B = summarize(sb, locate_all(sb, a, tol));
  const bool a_area = a.kind == GeometryKind::Polygon, b_area = b.kind == GeometryKind::Polygon;

  Matrix m;
  m.ii = A.interior_hits_interior || B.interior_hits_interior ||
         (a_area && b_area && (A.any_hits_interior || B.any_hits_interior || (A.all_on_boundary && B.all_on_boundary)));
  if (m.ii) m.ii_dim = (a.dimension() == 1 && b.dimension() == 1) ? ((A.midpoint_hits_interior || B.midpoint_hits_interior) ? 1 : 0)
                                                                  : std::min(a.dimension(), b.dimension());
  m.intersects = m.ii || A.any_touches || B.any_touches;
  m.ie_ab = a_area ? (!b_area || A.any_exterior) : A.interior_hits_exterior;
  m.ie_ba = b_area ? (!a_area || B.any_exterior) : B.interior_hits_exterior;
  m.covered_ab = a_area ? (b_area && !A.any_exterior) : !A.any_exterior;
  m.covered_ba = b_area ? (a_area && !B.any_exterior) : !B.any_exterior;
  return m;
}

}  // namespace

std::string_view name_of(Relation r) noexcept {
  for (const auto& [value, name] : kRelationNames)
    if (value == r) return name;
  return "intersects";
}

Relation parse_relation(std::string_view name) {
  for (const auto& [value, n] : kRelationNames)
    if (n == name) return value;
  throw ContractError("unknown spatial relation '" + std::string(name) + "'");
}

Location locate(Point p, const Geometry& g) {
  validate(g);
  const Geometry probe = Geometry::point(p);
  const double tol = tolerance_for(probe, g);
  return locate_all({Sample{p, false, false, std::nullopt}}, g, tol).front();
}

bool spatial_predicate(Relation relation, const Geometry& a, const Geometry& b) {
  const Matrix m = relate(a, b);
  const int da = a.dimension(), db = b.dimension();
  switch (relation) {
    case Relation::Intersects: return m.intersects;
    case Relation::Within: return m.covered_ab && m.ii;
    case Relation::Contains: return m.covered_ba && m.ii;
    case Relation::Equals: return m.covered_ab && m.covered_ba;
    case Relation::Touches: return m.intersects && !m.ii;
    case Relation::Crosses:
      if (da < db) return m.ii && m.ie_ab;
      if (da > db) return m.ii && m.ie_ba;
      if (da == 1) return m.ii && m.ii_dim == 0;
      return false;
    case Relation::Overlaps:
      if (da != db || !m.ii || !m.ie_ab || !m.ie_ba) return false;
      return da != 1 || m.ii_dim == 1;
  }
  return false;
}

EventInterval predicate_with_event_interval(Relation relation, const TimedTrajectory& traj, const Geometry& g) {
  validate(traj);
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    if (!spatial_predicate(relation, Geometry::point(traj.points[i]), g)) continue;
    if (!first) first = i;
    last = i;
  }
  EventInterval out;
  if (!first) return out;
  out.holds = true;
  out.interval = temporal::Interval{traj.timestamps[*first], traj.timestamps[*last]};
  return out;
}

}  // namespace star::spatial
