#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace star::temporal {

struct Interval {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const Interval&) const = default;
};

// Throws ValidationError unless start <= end and both are finite.
void validate(const Interval& i);

enum class AllenRelation {
  Before,
  After,
  Meets,
  MetBy,
  Overlaps,
  OverlappedBy,
  Starts,
  StartedBy,
  During,
  Contains,
  Finishes,
  FinishedBy,
  Equals,
};

inline constexpr std::array<AllenRelation, 13> kAllenRelations = {
    AllenRelation::Before,   AllenRelation::After,        AllenRelation::Meets,  AllenRelation::MetBy,
    AllenRelation::Overlaps, AllenRelation::OverlappedBy, AllenRelation::Starts, AllenRelation::StartedBy,
    AllenRelation::During,   AllenRelation::Contains,     AllenRelation::Finishes, AllenRelation::FinishedBy,
    AllenRelation::Equals,
};

std::string_view name_of(AllenRelation r) noexcept;
// Accepts snake_case names, optionally prefixed "allen_". Throws ContractError.
AllenRelation parse_allen(std::string_view name);
AllenRelation converse(AllenRelation r) noexcept;

// Strict endpoint semantics: shared endpoints never count as overlaps or
// during. Point intervals are classified by the same inequalities.
bool allen_relation(AllenRelation r, const Interval& a, const Interval& b);
bool allen_relation(std::string_view name, const Interval& a, const Interval& b);

// The single relation that holds.
AllenRelation classify_allen(const Interval& a, const Interval& b);

enum class SetOp { Union, Intersection, Difference };

// Sorted, pairwise disjoint, touching intervals merged.
std::vector<Interval> canonicalize(std::vector<Interval> xs);

// Union of everything, intersection of the two canonical sets, or a minus b.
// Difference keeps closed endpoints ([0,10] - [3,4] = [0,3], [4,10]).
std::vector<Interval> interval_set(SetOp op, const std::vector<Interval>& a, const std::vector<Interval>& b);

struct ForecastOptions {
  std::optional<std::size_t> period;  // inferred from autocorrelation when absent
  std::optional<std::size_t> window;  // defaults to the period
};

// Dominant period: the lag in [2, n/2] with the highest autocorrelation,
// smallest lag on ties. Returns nullopt for series shorter than 4 or with no
// variance.
std::optional<std::size_t> infer_period(const std::vector<double>& series);

// Equal-weight mean of a seasonal-naive forecast and the trailing moving
// average. Throws InsufficientDataError when the series is shorter than
// max(2 * period, window).
std::vector<double> forecast(const std::vector<double>& series, std::size_t horizon, const ForecastOptions& opts = {});

}  // namespace star::temporal
