#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "star/agents/agent.hpp"
#include "star/executor/executor.hpp"
#include "star/harness/eval.hpp"
#include "star/routing/kernel.hpp"
#include "star/routing/training.hpp"

namespace star::harness {

// Which specialists are tried on the same query after an error state.
struct RecoveryCandidateRule {
  // Empty: every specialist other than the failing one, in pool order.
  std::vector<Agent> candidates;

  std::vector<Agent> for_agent(Agent failing) const;
};

struct PipelineConfig {
  TrainingConfig training;
  executor::InferenceConfig inference;
  RecoveryCandidateRule candidates;
};

struct TrainingRun {
  std::vector<ExecutionTrace> traces;
  CountTensor counts;
  RecoveryMatrix matrix;
  RoutingKernel kernel;
};

// Runs every record through `bootstrap` (typically the nominal-only kernel),
// marks correctness, tries the recovery candidates at each error state,
// then counts and normalizes. Deterministic for deterministic runtimes.
TrainingRun run_training_pipeline(const std::vector<QueryRecord>& records, agents::AgentRuntime& runtime,
                                  const RoutingKernel& bootstrap, const PipelineConfig& cfg);

// -- scripted simulation ---------------------------------------------------

struct AgentScript {
  double succ = 1.0, fail = 0.0, block = 0.0, miss = 0.0;
  double accuracy = 1.0;  // chance a SUCC deposit leads to a correct answer
  // Accuracy when the latest other specialist on the board ended in this
  // error status (the agent is running as a recovery). Falls back to accuracy.
  std::map<Status, double> accuracy_after;
};

// Per (agent, task type) status distribution and correctness rule. Unscripted
// pairs always MISS. Every draw is a pure function of (seed, query id, agent).
struct ScriptedBehavior {
  std::map<std::pair<Agent, std::string>, AgentScript> scripts;
  double fusion_accuracy = 0.5;  // FUSION alone, no successful specialist
  std::uint64_t seed = 0;

  void set(Agent a, const std::string& task_type, AgentScript s) { scripts[{a, task_type}] = s; }
  const AgentScript* find(Agent a, const std::string& task_type) const;
  std::vector<std::string> task_types() const;

  // Throws ContractError unless each distribution sums to 1 and every
  // probability lies in [0, 1].
  void validate() const;
};

// Simulated agents: the query text is the task type; answers are "1"
// (correct) or "0".
class ScriptedRuntime final : public agents::AgentRuntime {
 public:
  ScriptedRuntime(std::shared_ptr<const Taxonomy> taxonomy, ScriptedBehavior behavior);

  agents::QueryProfile classify(const agents::Query& q) override;
  agents::AgentResult execute(Agent a, const Blackboard& bb, const agents::Query& q) override;
  agents::FusionOutput fuse(const Blackboard& bb, const agents::Query& q, const agents::QueryProfile& profile) override;

  const ScriptedBehavior& behavior() const noexcept { return behavior_; }

 private:
  std::shared_ptr<const Taxonomy> taxonomy_;
  ScriptedBehavior behavior_;
};

// Uniform in [0, 1), stable across platforms.
double scripted_draw(std::uint64_t seed, std::string_view query_id, Agent a, std::uint64_t salt);

// n synthetic queries cycling through the behavior's task types; gold "1".
std::vector<QueryRecord> synthetic_queries(const ScriptedBehavior& behavior, std::size_t n, std::uint64_t seed);

struct RecoveryRow {
  std::size_t n = 0;
  std::size_t correct = 0;
  double em() const noexcept { return n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n); }
};

// Outcomes partitioned by the first error status of each run.
struct RecoveryBreakdown {
  RecoveryRow no_failure, fail, block, miss;
  std::size_t total() const noexcept { return no_failure.n + fail.n + block.n + miss.n; }
};

RecoveryBreakdown simulate_recovery(const ScriptedBehavior& behavior, const RoutingKernel& kernel,
                                    std::size_t n_queries, std::uint64_t seed,
                                    const executor::InferenceConfig& cfg = {});

// -- alpha sweep -----------------------------------------------------------

struct AlphaPoint {
  double alpha = 0.0;
  double precision = 0.0;  // mean M[a,s,t,a*] over the oracle's nominal triples
  double coverage = 0.0;   // share of visited error triples with non-empty rows
};

struct OracleKey {
  Agent agent;
  Status status;
  std::string task_type;
  auto operator<=>(const OracleKey&) const = default;
};
using SuccessorOracle = std::map<OracleKey, Agent>;

// Successor of every nominal step observed in correct traces, by majority
// (ties to pool order).
SuccessorOracle majority_oracle(std::span<const ExecutionTrace> traces);

// Retrains at every grid point with `base` (alpha replaced).
std::vector<AlphaPoint> alpha_sweep(std::span<const ExecutionTrace> traces, const std::vector<double>& grid,
                                    const SuccessorOracle& oracle, std::shared_ptr<const Taxonomy> taxonomy,
                                    TrainingConfig base = {});

}  // namespace star::harness
