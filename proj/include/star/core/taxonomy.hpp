#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace star {

// Index into a Taxonomy. The slot one past the registered names is OPEN,
// the catch-all for task types the taxonomy does not know.
struct TaskType {
  std::uint32_t index = 0;
  constexpr bool operator==(const TaskType&) const = default;
};

inline constexpr std::string_view kOpenTaskType = "OPEN";

// Finite registered set of task types. Immutable once constructed; share it
// through std::shared_ptr<const Taxonomy>.
class Taxonomy {
 public:
  explicit Taxonomy(std::vector<std::string> names);

  // The 35 task types of the three benchmark suites (STARK, STBench, ST-Bench).
  static std::shared_ptr<const Taxonomy> builtin();

  std::size_t size() const noexcept { return names_.size(); }
  // Registered types plus the OPEN slot.
  std::size_t slot_count() const noexcept { return names_.size() + 1; }

  TaskType open() const noexcept { return TaskType{static_cast<std::uint32_t>(names_.size())}; }
  bool is_open(TaskType t) const noexcept { return t.index == names_.size(); }

  std::optional<TaskType> find(std::string_view name) const;
  // Unregistered names resolve to OPEN.
  TaskType resolve(std::string_view name) const;
  // Throws ContractError for unregistered names.
  TaskType require(std::string_view name) const;

  std::string_view name(TaskType t) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool operator==(const Taxonomy& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

}  // namespace star
