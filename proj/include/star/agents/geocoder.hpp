#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace star::agents {

// Reverse geocoding from recorded (lat, lon, name) fixtures; no network.
class FixtureGeocoder {
 public:
  explicit FixtureGeocoder(double tolerance_deg = 0.05) : tolerance_deg_(tolerance_deg) {}

  static FixtureGeocoder from_file(const std::filesystem::path& path, double tolerance_deg = 0.05);
  // One {"lat", "lon", "name"} record per line. Throws ParseError with the line.
  static FixtureGeocoder from_jsonl(std::string_view text, double tolerance_deg = 0.05);

  void add(double lat, double lon, std::string name);
  std::size_t size() const noexcept { return entries_.size(); }

  // Name of the nearest entry within tolerance (planar degrees). Throws
  // LookupError when nothing is close enough.
  std::string reverse(double lat, double lon) const;

 private:
  struct Entry {
    double lat, lon;
    std::string name;
  };
  double tolerance_deg_;
  std::vector<Entry> entries_;
};

}  // namespace star::agents
