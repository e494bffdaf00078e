#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "star/core/error.hpp"
#include "star/temporal/interval.hpp"

namespace star::temporal {

namespace {

constexpr std::array<std::pair<AllenRelation, std::string_view>, 13> kNames = {{
    {AllenRelation::Before, "before"},
    {AllenRelation::After, "after"},
    {AllenRelation::Meets, "meets"},
    {AllenRelation::MetBy, "met_by"},
    {AllenRelation::Overlaps, "overlaps"},
    {AllenRelation::OverlappedBy, "overlapped_by"},
    {AllenRelation::Starts, "starts"},
    {AllenRelation::StartedBy, "started_by"},
    {AllenRelation::During, "during"},
    {AllenRelation::Contains, "contains"},
    {AllenRelation::Finishes, "finishes"},
    {AllenRelation::FinishedBy, "finished_by"},
    {AllenRelation::Equals, "equals"},
}};

}  // namespace

void validate(const Interval& i) {
  if (!std::isfinite(i.start) || !std::isfinite(i.end)) throw ValidationError("interval: non-finite endpoint");
  if (i.start > i.end) throw ValidationError("interval: start > end");
}

std::string_view name_of(AllenRelation r) noexcept {
  for (const auto& [v, n] : kNames)
    if (v == r) return n;
  return "equals";
}

AllenRelation parse_allen(std::string_view name) {
  std::string_view n = name;
  if (n.substr(0, 6) == "allen_") n.remove_prefix(6);
  for (const auto& [v, s] : kNames)
    if (s == n) return v;
  if (n == "metby") return AllenRelation::MetBy;
  if (n == "overlappedby") return AllenRelation::OverlappedBy;
  if (n == "startedby") return AllenRelation::StartedBy;
  if (n == "finishedby") return AllenRelation::FinishedBy;
  throw ContractError("unknown Allen relation '" + std::string(name) + "'");
}

AllenRelation converse(AllenRelation r) noexcept {
  switch (r) {
    case AllenRelation::Before: return AllenRelation::After;
    case AllenRelation::After: return AllenRelation::Before;
    case AllenRelation::Meets: return AllenRelation::MetBy;
    case AllenRelation::MetBy: return AllenRelation::Meets;
    case AllenRelation::Overlaps: return AllenRelation::OverlappedBy;
    case AllenRelation::OverlappedBy: return AllenRelation::Overlaps;
    case AllenRelation::Starts: return AllenRelation::StartedBy;
    case AllenRelation::StartedBy: return AllenRelation::Starts;
    case AllenRelation::During: return AllenRelation::Contains;
    case AllenRelation::Contains: return AllenRelation::During;
    case AllenRelation::Finishes: return AllenRelation::FinishedBy;
    case AllenRelation::FinishedBy: return AllenRelation::Finishes;
    case AllenRelation::Equals: return AllenRelation::Equals;
  }
  return r;
}

bool allen_relation(AllenRelation r, const Interval& a, const Interval& b) {
  validate(a);
  validate(b);
  const double as = a.start, ae = a.end, bs = b.start, be = b.end;
  switch (r) {
    case AllenRelation::Before: return ae < bs;
    case AllenRelation::After: return be < as;
    // meets/met_by need both intervals to have extent; a point touching an
    // endpoint is a starts/finishes case instead.
    case AllenRelation::Meets: return ae == bs && as < ae && bs < be;
    case AllenRelation::MetBy: return as == be && as < ae && bs < be;
    case AllenRelation::Overlaps: return as < bs && bs < ae && ae < be;
    case AllenRelation::OverlappedBy: return bs < as && as < be && be < ae;
    case AllenRelation::Starts: return as == bs && ae < be;
    case AllenRelation::StartedBy: return as == bs && be < ae;
    case AllenRelation::During: return bs < as && ae < be;
    case AllenRelation::Contains: return as < bs && be < ae;
    case AllenRelation::Finishes: return ae == be && bs < as;
    case AllenRelation::FinishedBy: return ae == be && as < bs;
    case AllenRelation::Equals: return as == bs && ae == be;
  }
  return false;
}

bool allen_relation(std::string_view name, const Interval& a, const Interval& b) {
  return allen_relation(parse_allen(name), a, b);
}

AllenRelation classify_allen(const Interval& a, const Interval& b) {
  for (AllenRelation r : kAllenRelations)
    if (allen_relation(r, a, b)) return r;
  // Unreachable for valid intervals: the thirteen cases partition them.
  throw ContractError("classify_allen: no relation holds");
}

}  // namespace star::temporal
