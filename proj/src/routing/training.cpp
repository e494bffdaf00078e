#include "star/routing/training.hpp"

#include <array>

#include "star/core/error.hpp"
#include "star/simd/kernels.hpp"

namespace star {

double trace_weight(bool correct, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractError("trace_weight: alpha must lie in [0, 1]");
  const double r = correct ? 1.0 : 0.0;
  return r + alpha * (1.0 - r);
}

Status status_slot(Status s, Ablation ablation) noexcept {
  if (ablation == Ablation::NoStatus && status_is_error(s)) return Status::Fail;
  return s;
}

CountTensor train_count_tensor(std::span<const ExecutionTrace> traces, const Taxonomy& taxonomy,
                               const TrainingConfig& cfg) {
  CountTensor counts(TensorShape(taxonomy.slot_count()));
  const double alpha = cfg.effective_alpha();
  for (const auto& trace : traces) {
    const TaskType t = taxonomy.resolve(trace.task_type);
    const double w = trace_weight(trace.correct, alpha);
    if (w > 0.0) {
      for (std::size_t j = 0; j + 1 < trace.steps.size(); ++j) {
        const auto& cur = trace.steps[j];
        counts.add(cur.agent, status_slot(cur.status, cfg.ablation), t, trace.steps[j + 1].agent, w);
      }
    }
    if (cfg.enable_augmentation) {
      for (const auto& aug : trace.augmented)
        if (aug.recovered) counts.add(aug.from, status_slot(aug.status, cfg.ablation), t, aug.to, 1.0);
    }
  }
  return counts;
}

RecoveryMatrix normalize(const CountTensor& counts) {
  const TensorShape& shape = counts.shape();
  RecoveryMatrix m(shape);
  std::array<double, kAgentCount> buf{};
  const auto fusion_delta = [] {
    std::array<double, kAgentCount> d{};
    d[index_of(Agent::Fusion)] = 1.0;
    return d;
  }();
  for (Status s : kAllStatuses)
    for (std::uint32_t ti = 0; ti < shape.type_slots(); ++ti) m.set_row(Agent::Fusion, s, TaskType{ti}, fusion_delta);

  for (Agent a : kAllAgents) {
    if (a == Agent::Fusion) continue;
    for (Status s : kAllStatuses) {
      for (std::uint32_t ti = 0; ti < shape.type_slots(); ++ti) {
        const TaskType t{ti};
        auto row = counts.row(a, s, t);
        const double total = simd::sum(row);
        if (!(total > 0.0)) continue;
        std::copy(row.begin(), row.end(), buf.begin());
        simd::scale(buf, 1.0 / total);
        m.set_row(a, s, t, buf);
      }
    }
  }
  return m;
}

AgentSet support(const RecoveryMatrix& m, Agent a, Status s, TaskType t) {
  AgentSet out;
  if (m.row_empty(a, s, t)) return out;
  auto row = m.row(a, s, t);
  for (Agent to : kAllAgents)
    if (row[index_of(to)] > 0.0) out.insert(to);
  return out;
}

}  // namespace star
