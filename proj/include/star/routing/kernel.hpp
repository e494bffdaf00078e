#pragma once

#include <array>
#include <memory>
#include <span>

#include "star/core/agent.hpp"
#include "star/core/status.hpp"
#include "star/core/taxonomy.hpp"
#include "star/core/trace.hpp"
#include "star/routing/config.hpp"
#include "star/routing/nominal.hpp"
#include "star/routing/tensor.hpp"

namespace star {

// Probability mass per agent, indexed in pool order.
struct Distribution {
  std::array<double, kAgentCount> p{};

  static Distribution delta(Agent a) {
    Distribution d;
    d.p[index_of(a)] = 1.0;
    return d;
  }
  double operator[](Agent a) const noexcept { return p[index_of(a)]; }
  double& operator[](Agent a) noexcept { return p[index_of(a)]; }
  double total() const noexcept;
  // Highest-mass agent; ties go to the earlier agent in pool order.
  Agent argmax() const noexcept;

  bool operator==(const Distribution&) const = default;
};

// Dual-system routing kernel: System 1 (nominal expert routes) on Omega_1,
// System 2 (learned recovery matrix) everywhere else, with a FUSION safety
// net for empty rows. Immutable; safe to share across threads.
class RoutingKernel {
 public:
  RoutingKernel(NominalRouteTable nominal, RecoveryMatrix recovery, TrainingConfig trained_with);

  const Taxonomy& taxonomy() const noexcept { return nominal_.taxonomy(); }
  const std::shared_ptr<const Taxonomy>& taxonomy_ptr() const noexcept { return nominal_.taxonomy_ptr(); }
  const NominalRouteTable& nominal() const noexcept { return nominal_; }
  const RecoveryMatrix& recovery() const noexcept { return recovery_; }
  const TrainingConfig& trained_with() const noexcept { return trained_with_; }

  // (a, s, t) in Omega_1 iff s is INIT/SUCC and the expert route for t
  // defines a successor of a.
  bool in_omega1(Agent a, Status s, TaskType t) const;

  // Total over (a, s, t): always returns a distribution. Throws ContractError
  // for task-type indices outside the taxonomy (including OPEN slot + 1).
  Distribution route(Agent a, Status s, TaskType t, Ablation ablation) const;

 private:
  Distribution system2(Agent a, Status s, TaskType t, Ablation ablation) const;

  NominalRouteTable nominal_;
  RecoveryMatrix recovery_;
  TrainingConfig trained_with_;
};

Distribution route_distribution(const RoutingKernel& kernel, Agent a, Status s, TaskType t,
                                const TrainingConfig& cfg);

// Counts, normalizes and wraps in a kernel in one go.
RoutingKernel train_kernel(std::span<const ExecutionTrace> traces, NominalRouteTable nominal,
                           const TrainingConfig& cfg);

// Kernel with expert routes only: every System-2 row is empty.
RoutingKernel nominal_only_kernel(NominalRouteTable nominal);

}  // namespace star
