#include "star/spatial/geodesy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "star/core/error.hpp"

namespace star::spatial {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void require_geographic(const Point& p, const char* op) {
  if (p.frame != Frame::Geographic) throw ValidationError(std::string(op) + ": geographic coordinates required");
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < -180 || p.x > 180 || p.y < -90 || p.y > 90)
    throw ValidationError(std::string(op) + ": coordinate out of range");
}

double wrap360(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  return d >= 360.0 ? 0.0 : d;
}

}  // namespace

double compass_bearing(Point p, Point q) {
  require_geographic(p, "compass_bearing");
  require_geographic(q, "compass_bearing");
  if (p.x == q.x && p.y == q.y) throw UndefinedError("compass_bearing: bearing from a point to itself is undefined");
  const double phi1 = p.y * kDeg, phi2 = q.y * kDeg, dl = (q.x - p.x) * kDeg;
  const double y = std::sin(dl) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dl);
  return wrap360(std::atan2(y, x) / kDeg);
}

int bearing_to_wedge(double deg, WedgeRule rule) {
  if (!std::isfinite(deg)) throw ContractError("bearing_to_wedge: bearing is not finite");
  const double d = wrap360(deg);
  if (rule == WedgeRule::Compat && (d < 33.75 || d >= 326.25)) return 1;
  return static_cast<int>(std::floor((d + 22.5) / 45.0)) % 8 + 1;
}

std::string_view wedge_name(int wedge) {
  static constexpr std::array<std::string_view, 8> names = {"North", "Northeast", "East", "Southeast",
                                                            "South", "Southwest", "West", "Northwest"};
  if (wedge < 1 || wedge > 8) throw ContractError("wedge index out of range");
  return names[static_cast<std::size_t>(wedge - 1)];
}

double haversine_distance(Point p, Point q) {
  require_geographic(p, "haversine_distance");
  require_geographic(q, "haversine_distance");
  const double phi1 = p.y * kDeg, phi2 = q.y * kDeg;
  const double dphi = phi2 - phi1, dl = (q.x - p.x) * kDeg;
  const double h = std::sin(dphi / 2) * std::sin(dphi / 2) + std::cos(phi1) * std::cos(phi2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

// ---------------------------------------------------------------------------
// localization

namespace {

struct V2 {
  double x = 0, y = 0;
};
V2 operator+(V2 a, V2 b) { return {a.x + b.x, a.y + b.y}; }
V2 operator-(V2 a, V2 b) { return {a.x - b.x, a.y - b.y}; }
V2 operator*(double s, V2 a) { return {s * a.x, s * a.y}; }
double dot(V2 a, V2 b) { return a.x * b.x + a.y * b.y; }
double cross(V2 a, V2 b) { return a.x * b.y - a.y * b.x; }
double norm(V2 a) { return std::hypot(a.x, a.y); }

struct Obs {
  V2 anchor;
  std::optional<V2> dir;  // unit bearing direction
  std::optional<double> range;
};

struct Eval {
  double cost = 0;   // sum of squared residuals
  double jtj[3]{};   // xx, xy, yy
  double jtr[2]{};
};

// Bearings act as rays: behind the anchor the residual is the distance to it.
Eval evaluate(const std::vector<Obs>& obs, V2 p) {
  Eval e;
  auto add = [&e](double r, V2 g) {
    e.cost += r * r;
    e.jtj[0] += g.x * g.x;
    e.jtj[1] += g.x * g.y;
    e.jtj[2] += g.y * g.y;
    e.jtr[0] += g.x * r;
    e.jtr[1] += g.y * r;
  };
  for (const auto& o : obs) {
    const V2 v = p - o.anchor;
    const double dist = norm(v);
    const V2 radial = dist > 0 ? (1.0 / dist) * v : V2{0, 0};
    if (o.dir) {
      const V2 d = *o.dir;
      if (dot(v, d) >= 0)
        add(cross(d, v), V2{-d.y, d.x});
      else
        add(dist, radial);
    }
    if (o.range) add(dist - *o.range, radial);
  }
  return e;
}

V2 gauss_newton(const std::vector<Obs>& obs, V2 p, double scale) {
  for (int iter = 0; iter < 100; ++iter) {
    const Eval e = evaluate(obs, p);
    const double det = e.jtj[0] * e.jtj[2] - e.jtj[1] * e.jtj[1];
    const double tr = e.jtj[0] + e.jtj[2];
    if (!(det > 1e-14 * tr * tr)) break;
    const V2 step{-(e.jtj[2] * e.jtr[0] - e.jtj[1] * e.jtr[1]) / det, -(e.jtj[0] * e.jtr[1] - e.jtj[1] * e.jtr[0]) / det};
    const V2 next = p + step;
    if (evaluate(obs, next).cost > e.cost) break;
    p = next;
    if (norm(step) <= 1e-13 * scale) break;
  }
  return p;
}

void circle_circle(V2 c0, double r0, V2 c1, double r1, double scale, std::vector<V2>& out) {
  const V2 d = c1 - c0;
  const double dist = norm(d);
  if (dist <= 1e-12 * scale) return;  // concentric: no isolated solution
  const double a = (r0 * r0 - r1 * r1 + dist * dist) / (2 * dist);
  double h2 = r0 * r0 - a * a;
  if (h2 < 0) {
    if (h2 < -1e-9 * scale * scale) return;
    h2 = 0;
  }
  const double h = std::sqrt(h2);
  const V2 u = (1.0 / dist) * d;
  const V2 base = c0 + a * u;
  out.push_back(base + h * V2{-u.y, u.x});
  if (h > 0) out.push_back(base - h * V2{-u.y, u.x});
}

void ray_circle(V2 a, V2 dir, V2 c, double r, std::vector<V2>& out) {
  const V2 f = a - c;
  const double b = dot(f, dir), cc = dot(f, f) - r * r;
  double disc = b * b - cc;
  if (disc < 0) {
    if (disc < -1e-9 * (r * r + 1)) return;
    disc = 0;
  }
  const double sq = std::sqrt(disc);
  for (double s : {-b - sq, -b + sq})
    if (s >= 0) out.push_back(a + s * dir);
}

}  // namespace

Fix localize(const std::vector<Observation>& observations) {
  std::size_t constraints = 0;
  bool geographic = false;
  for (const auto& o : observations) {
    constraints += (o.bearing_deg ? 1 : 0) + (o.range ? 1 : 0);
    if (o.anchor.frame == Frame::Geographic) geographic = true;
    if (o.range && !(*o.range >= 0 && std::isfinite(*o.range))) throw ValidationError("localize: range must be finite and >= 0");
    if (o.bearing_deg && !std::isfinite(*o.bearing_deg)) throw ValidationError("localize: bearing must be finite");
  }
  if (constraints < 2) throw ContractError("localize: at least two bearing/range constraints are required");
  for (const auto& o : observations)
    if ((o.anchor.frame == Frame::Geographic) != geographic) throw ValidationError("localize: mixed coordinate frames");

  // Local frame: planar units as-is, geographic via equirectangular metres.
  double lon0 = 0, lat0 = 0;
  for (const auto& o : observations) {
    lon0 += o.anchor.x;
    lat0 += o.anchor.y;
  }
  lon0 /= static_cast<double>(observations.size());
  lat0 /= static_cast<double>(observations.size());
  const double kx = geographic ? kEarthRadiusM * kDeg * std::cos(lat0 * kDeg) : 1.0;
  const double ky = geographic ? kEarthRadiusM * kDeg : 1.0;
  auto to_local = [&](Point p) { return geographic ? V2{(p.x - lon0) * kx, (p.y - lat0) * ky} : V2{p.x, p.y}; };

  std::vector<Obs> obs;
  double scale = 1.0;
  for (const auto& o : observations) {
    Obs l;
    if (geographic) require_geographic(o.anchor, "localize");
    l.anchor = to_local(o.anchor);
    if (o.bearing_deg) l.dir = V2{std::sin(*o.bearing_deg * kDeg), std::cos(*o.bearing_deg * kDeg)};
    l.range = o.range;
    scale = std::max({scale, std::abs(l.anchor.x), std::abs(l.anchor.y), o.range.value_or(0.0)});
    obs.push_back(l);
  }

  std::vector<V2> seeds;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].dir && obs[i].range) seeds.push_back(obs[i].anchor + *obs[i].range * *obs[i].dir);
    for (std::size_t j = 0; j < obs.size(); ++j) {
      if (i == j) continue;
      if (i < j && obs[i].dir && obs[j].dir) {
        const double denom = cross(*obs[i].dir, *obs[j].dir);
        if (std::abs(denom) > 1e-12) {
          const double s = cross(obs[j].anchor - obs[i].anchor, *obs[j].dir) / denom;
          seeds.push_back(obs[i].anchor + s * *obs[i].dir);
        }
      }
      if (i < j && obs[i].range && obs[j].range)
        circle_circle(obs[i].anchor, *obs[i].range, obs[j].anchor, *obs[j].range, scale, seeds);
      if (obs[i].dir && obs[j].range) ray_circle(obs[i].anchor, *obs[i].dir, obs[j].anchor, *obs[j].range, seeds);
    }
  }
  if (seeds.empty()) throw NoSolutionError("localize: observations have no isolated intersection");

  const double tiny = (1e-9 * scale) * (1e-9 * scale);
  std::optional<V2> best;
  double best_cost = 0;
  for (const V2& s : seeds) {
    const V2 p = gauss_newton(obs, s, scale);
    const double c = evaluate(obs, p).cost;
    if (!std::isfinite(c)) continue;
    const bool tie = std::abs(c - best_cost) <= std::max(tiny, 1e-12 * std::max(c, best_cost));
    if (!best || (!tie && c < best_cost) || (tie && (p.x < best->x || (p.x == best->x && p.y < best->y)))) {
      best = p;
      best_cost = c;
    }
  }
  if (!best) throw NoSolutionError("localize: no finite solution");

  const Eval e = evaluate(obs, *best);
  const double det = e.jtj[0] * e.jtj[2] - e.jtj[1] * e.jtj[1];
  const double tr = e.jtj[0] + e.jtj[2];
  if (!(det > 1e-12 * tr * tr) && e.cost > tiny)
    throw NoSolutionError("localize: observations do not constrain a unique point");

  Fix fix;
  fix.residual = std::sqrt(e.cost);
  if (geographic)
    fix.point = spatial::geographic(best->x / kx + lon0, best->y / ky + lat0);
  else
    fix.point = planar(best->x, best->y);
  return fix;
}

}  // namespace star::spatial
