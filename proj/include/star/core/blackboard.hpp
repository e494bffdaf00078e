#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "star/core/agent.hpp"
#include "star/core/value.hpp"

namespace star {

// What an agent hands back before the executor assigns it a step.
struct Deposit {
  Agent producer = Agent::Head;
  std::string key;
  Value payload;
};

struct BlackboardEntry {
  Agent producer = Agent::Head;
  std::string key;
  Value payload;
  std::size_t step = 0;

  bool operator==(const BlackboardEntry&) const = default;
};

// Append-only shared workspace. Entries with a repeated key never overwrite;
// readers see the latest entry per key.
class Blackboard {
 public:
  Blackboard() = default;

  const std::vector<BlackboardEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Throws ContractError unless entry.step == size().
  void append(BlackboardEntry entry);
  // Appends with the next step number.
  void deposit(Deposit d);

  const BlackboardEntry* latest(std::string_view key) const noexcept;
  bool has(std::string_view key) const noexcept { return latest(key) != nullptr; }

  // Resolves "key.field.0.sub" against the latest entry for key.
  std::optional<Value> lookup(std::string_view path) const;

  bool is_prefix_of(const Blackboard& later) const noexcept;

  bool operator==(const Blackboard&) const = default;

 private:
  std::vector<BlackboardEntry> entries_;
};

Blackboard blackboard_append(Blackboard bb, BlackboardEntry entry);

Value to_json(const BlackboardEntry& entry);
BlackboardEntry entry_from_json(const Value& v);

}  // namespace star
