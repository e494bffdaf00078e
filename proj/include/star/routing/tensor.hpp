#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "star/core/agent.hpp"
#include "star/core/status.hpp"
#include "star/core/taxonomy.hpp"

namespace star {

// Dense [from agent x status x task-type slot x to agent] layout. Rows are
// the innermost kAgentCount doubles.
class TensorShape {
 public:
  explicit TensorShape(std::size_t type_slots) : type_slots_(type_slots) {}

  std::size_t type_slots() const noexcept { return type_slots_; }
  std::size_t row_count() const noexcept { return kAgentCount * kStatusCount * type_slots_; }
  std::size_t size() const noexcept { return row_count() * kAgentCount; }

  std::size_t row(Agent a, Status s, TaskType t) const noexcept {
    return (index_of(a) * kStatusCount + index_of(s)) * type_slots_ + t.index;
  }
  std::size_t offset(Agent a, Status s, TaskType t, Agent to) const noexcept {
    return row(a, s, t) * kAgentCount + index_of(to);
  }

  bool operator==(const TensorShape&) const = default;

 private:
  std::size_t type_slots_;
};

class CountTensor {
 public:
  explicit CountTensor(TensorShape shape) : shape_(shape), data_(shape.size(), 0.0) {}

  const TensorShape& shape() const noexcept { return shape_; }
  double at(Agent a, Status s, TaskType t, Agent to) const { return data_[shape_.offset(a, s, t, to)]; }
  void add(Agent a, Status s, TaskType t, Agent to, double weight) { data_[shape_.offset(a, s, t, to)] += weight; }

  std::span<const double> row(Agent a, Status s, TaskType t) const {
    return {data_.data() + shape_.row(a, s, t) * kAgentCount, kAgentCount};
  }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * kAgentCount, kAgentCount}; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  TensorShape shape_;
  std::vector<double> data_;
};

// Row-normalized recovery probabilities. A row with no observed mass is
// marked empty and carries no distribution.
class RecoveryMatrix {
 public:
  explicit RecoveryMatrix(TensorShape shape)
      : shape_(shape), data_(shape.size(), 0.0), nonempty_(shape.row_count(), 0) {}

  const TensorShape& shape() const noexcept { return shape_; }

  double at(Agent a, Status s, TaskType t, Agent to) const { return data_[shape_.offset(a, s, t, to)]; }
  bool row_empty(Agent a, Status s, TaskType t) const { return nonempty_[shape_.row(a, s, t)] == 0; }
  std::span<const double> row(Agent a, Status s, TaskType t) const {
    return {data_.data() + shape_.row(a, s, t) * kAgentCount, kAgentCount};
  }

  // Installs a distribution verbatim. An all-zero row is stored as empty.
  void set_row(Agent a, Status s, TaskType t, std::span<const double> probs);
  void set_row(std::size_t r, std::span<const double> probs);
  void clear_row(std::size_t r);

  bool row_empty(std::size_t r) const { return nonempty_[r] == 0; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * kAgentCount, kAgentCount}; }

  bool operator==(const RecoveryMatrix&) const = default;

 private:
  TensorShape shape_;
  std::vector<double> data_;
  std::vector<std::uint8_t> nonempty_;
};

}  // namespace star
