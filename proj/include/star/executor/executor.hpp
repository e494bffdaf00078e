#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "star/agents/agent.hpp"
#include "star/core/blackboard.hpp"
#include "star/core/trace.hpp"
#include "star/routing/kernel.hpp"

namespace star::executor {

enum class PivotOrder {
  BlockFirst,  // BLOCK > MISS > FAIL > SUCC
  MissFirst,   // MISS > BLOCK > FAIL > SUCC
};

struct InferenceConfig {
  double tau = 0.4;
  std::size_t max_steps = 10;   // trace steps, HEAD and FUSION included
  std::size_t parallelism = 4;  // concurrent agents per scatter
  bool allow_reentry = false;   // let an agent that already ran be activated again
  PivotOrder pivot_order = PivotOrder::BlockFirst;
  Ablation ablation = Ablation::Full;
  std::uint64_t seed = 0;       // RANDOM ablation only

  // Throws ContractError: tau outside (0, 1], max_steps < 2, parallelism 0.
  void validate() const;
};

struct InferenceResult {
  std::string answer;
  ExecutionTrace trace;
  Blackboard board;
  std::vector<Blackboard> history;  // board after every trace step
  agents::QueryProfile profile;
  bool budget_exhausted = false;
};

// {a : dist[a] >= tau} minus excluded; {FUSION} when that is empty.
AgentSet candidate_set(const Distribution& dist, double tau, AgentSet excluded);

// Highest-priority status wins; ties go to the earlier agent in pool order.
// Throws ContractError on an empty list.
std::pair<Agent, Status> pivot(const std::vector<std::pair<Agent, Status>>& results,
                               PivotOrder order = PivotOrder::BlockFirst);

// Runs every agent against the same board snapshot, at most `parallelism` at
// a time. Results come back in pool order whatever the completion order.
std::vector<std::pair<Agent, agents::AgentResult>> scatter(AgentSet agents, const Blackboard& bb,
                                                           const agents::Query& q, agents::AgentRuntime& runtime,
                                                           std::size_t parallelism);

// HEAD, then threshold-gated activation until FUSION is selected or the step
// budget runs out. Never throws for agent or kernel behaviour.
InferenceResult run_inference(const agents::Query& q, const RoutingKernel& kernel, agents::AgentRuntime& runtime,
                              const InferenceConfig& cfg = {});

}  // namespace star::executor
