#include "star/routing/kernel.hpp"

#include <utility>

#include "star/core/error.hpp"
#include "star/routing/training.hpp"

namespace star {

double Distribution::total() const noexcept {
  double s = 0.0;
  for (double x : p) s += x;
  return s;
}

Agent Distribution::argmax() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kAgentCount; ++i)
    if (p[i] > p[best]) best = i;
  return kAllAgents[best];
}

RoutingKernel::RoutingKernel(NominalRouteTable nominal, RecoveryMatrix recovery, TrainingConfig trained_with)
    : nominal_(std::move(nominal)), recovery_(std::move(recovery)), trained_with_(trained_with) {
  if (recovery_.shape().type_slots() != nominal_.taxonomy().slot_count())
    throw ContractError("routing kernel: recovery matrix shape does not match the taxonomy");
}

bool RoutingKernel::in_omega1(Agent a, Status s, TaskType t) const {
  return status_is_nominal(s) && nominal_.successor(t, a).has_value();
}

Distribution RoutingKernel::system2(Agent a, Status s, TaskType t, Ablation ablation) const {
  const Status slot = status_slot(s, ablation);
  if (recovery_.row_empty(a, slot, t)) return Distribution::delta(Agent::Fusion);
  Distribution d;
  auto row = recovery_.row(a, slot, t);
  for (std::size_t i = 0; i < kAgentCount; ++i) d.p[i] = row[i];
  return d;
}

Distribution RoutingKernel::route(Agent a, Status s, TaskType t, Ablation ablation) const {
  if (t.index >= taxonomy().slot_count())
    throw ContractError("route: task type index " + std::to_string(t.index) + " is not in the taxonomy");
  if (a == Agent::Fusion) return Distribution::delta(Agent::Fusion);

  switch (ablation) {
    case Ablation::Random: {
      Distribution d;
      const double share = 1.0 / static_cast<double>(kSpecialists.size() + 1);
      for (Agent c : kSpecialists) d[c] = share;
      d[Agent::Fusion] = share;
      return d;
    }
    case Ablation::System1Only:
      if (in_omega1(a, s, t)) return Distribution::delta(*nominal_.successor(t, a));
      return Distribution::delta(Agent::Fusion);
    case Ablation::System2Only:
      return system2(a, s, t, ablation);
    case Ablation::Full:
    case Ablation::NoStatus:
    case Ablation::AlphaZero:
      break;
  }
  if (in_omega1(a, s, t)) return Distribution::delta(*nominal_.successor(t, a));
  return system2(a, s, t, ablation);
}

Distribution route_distribution(const RoutingKernel& kernel, Agent a, Status s, TaskType t,
                                const TrainingConfig& cfg) {
  return kernel.route(a, s, t, cfg.ablation);
}

RoutingKernel train_kernel(std::span<const ExecutionTrace> traces, NominalRouteTable nominal,
                           const TrainingConfig& cfg) {
  auto counts = train_count_tensor(traces, nominal.taxonomy(), cfg);
  return RoutingKernel(std::move(nominal), normalize(counts), cfg);
}

RoutingKernel nominal_only_kernel(NominalRouteTable nominal) {
  CountTensor empty(TensorShape(nominal.taxonomy().slot_count()));
  return RoutingKernel(std::move(nominal), normalize(empty), TrainingConfig{});
}

}  // namespace star
