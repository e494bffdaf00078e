#pragma once

#include <span>

#include "star/core/agent.hpp"
#include "star/core/status.hpp"
#include "star/core/taxonomy.hpp"
#include "star/core/trace.hpp"
#include "star/routing/config.hpp"
#include "star/routing/tensor.hpp"

namespace star {

// w(r) = r + alpha * (1 - r). Throws ContractError unless alpha is in [0, 1].
double trace_weight(bool correct, double alpha);

// Status slot used for counting and lookup. Under NO_STATUS the three error
// statuses share the FAIL slot; nominal statuses keep their own.
Status status_slot(Status s, Ablation ablation) noexcept;

// Weighted transition counts over all consecutive trace steps, plus a
// weight-1 increment per recovered augmented transition when augmentation is
// enabled. Unregistered task types count under OPEN.
CountTensor train_count_tensor(std::span<const ExecutionTrace> traces, const Taxonomy& taxonomy,
                               const TrainingConfig& cfg);

// Row-normalizes C. Zero rows stay empty; every FUSION row becomes a delta on
// FUSION (absorbing terminal).
RecoveryMatrix normalize(const CountTensor& counts);

AgentSet support(const RecoveryMatrix& m, Agent a, Status s, TaskType t);

}  // namespace star
