#include "star/agents/geocoder.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "star/core/error.hpp"
#include "star/core/value.hpp"

namespace star::agents {

FixtureGeocoder FixtureGeocoder::from_file(const std::filesystem::path& path, double tolerance_deg) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open geocoder fixture " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str(), tolerance_deg);
}

FixtureGeocoder FixtureGeocoder::from_jsonl(std::string_view text, double tolerance_deg) {
  FixtureGeocoder g(tolerance_deg);
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Value v = Value::parse(line.begin(), line.end(), nullptr, false);
    if (v.is_discarded() || !v.is_object() || !v.contains("lat") || !v.contains("lon") || !v.contains("name") ||
        !v["lat"].is_number() || !v["lon"].is_number() || !v["name"].is_string())
      throw ParseError("geocoder record needs numeric lat, lon and a name", line_no);
    g.add(v["lat"].get<double>(), v["lon"].get<double>(), v["name"].get<std::string>());
  }
  return g;
}

void FixtureGeocoder::add(double lat, double lon, std::string name) {
  if (!std::isfinite(lat) || !std::isfinite(lon)) throw ValidationError("geocoder coordinates must be finite");
  entries_.push_back({lat, lon, std::move(name)});
}

std::string FixtureGeocoder::reverse(double lat, double lon) const {
  const Entry* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& e : entries_) {
    const double d = std::hypot(e.lat - lat, e.lon - lon);
    if (d < best_d) {
      best_d = d;
      best = &e;
    }
  }
  if (best == nullptr || best_d > tolerance_deg_) throw LookupError("no geocoder entry near the coordinate");
  return best->name;
}

}  // namespace star::agents
