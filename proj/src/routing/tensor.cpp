#include "star/routing/tensor.hpp"

#include <algorithm>

namespace star {

void RecoveryMatrix::set_row(Agent a, Status s, TaskType t, std::span<const double> probs) {
  set_row(shape_.row(a, s, t), probs);
}

void RecoveryMatrix::set_row(std::size_t r, std::span<const double> probs) {
  double* dst = data_.data() + r * kAgentCount;
  std::copy_n(probs.begin(), kAgentCount, dst);
  nonempty_[r] = std::any_of(dst, dst + kAgentCount, [](double p) { return p > 0.0; }) ? 1 : 0;
}

void RecoveryMatrix::clear_row(std::size_t r) {
  std::fill_n(data_.data() + r * kAgentCount, kAgentCount, 0.0);
  nonempty_[r] = 0;
}

}  // namespace star
