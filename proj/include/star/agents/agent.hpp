#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "star/agents/extractor.hpp"
#include "star/agents/geocoder.hpp"
#include "star/core/blackboard.hpp"
#include "star/core/status.hpp"
#include "star/core/taxonomy.hpp"
#include "star/spatial/geometry.hpp"

namespace star::agents {

struct AgentResult {
  Status status = Status::Fail;
  std::vector<Deposit> deposits;
};

// Resources the deterministic tools may consult.
struct ToolContext {
  const FixtureGeocoder* geocoder = nullptr;
  // Named places for landmark operations ("Union Square, San Francisco, CA").
  std::map<std::string, spatial::Point> gazetteer;
};

// select -> validate -> compute -> deposit. Never throws: selector or tool
// errors become FAIL, unresolved references BLOCK, mismatches MISS.
// Every outcome deposits one record under the agent's result key carrying
// "status" (and "operation" when one was selected).
AgentResult execute_agent(Agent a, const Blackboard& bb, const Query& q, Extractor& extractor,
                          const ToolContext& ctx = {});

// Standard or composite profile; anything unusable becomes OPEN. Never throws.
QueryProfile head_classify(const Query& q, Extractor& extractor, const Taxonomy& taxonomy);

struct FusionOutput {
  std::string answer;
  bool used_extractor = false;
  std::string source;  // template name, "extractor" or "default"
};

// Template path first (board result with tool confidence >= 0.5), then the
// extractor, then a benchmark-shaped default. Never throws, never empty.
FusionOutput fuse(const Blackboard& bb, const Query& q, const QueryProfile& profile, Extractor& extractor);

// What the executor drives. Implementations must tolerate concurrent
// execute() calls on the same board snapshot.
class AgentRuntime {
 public:
  virtual ~AgentRuntime() = default;
  virtual QueryProfile classify(const Query& q) = 0;
  virtual AgentResult execute(Agent a, const Blackboard& bb, const Query& q) = 0;
  virtual FusionOutput fuse(const Blackboard& bb, const Query& q, const QueryProfile& profile) = 0;
};

// The real agents: tools behind an extractor.
class ToolAgents final : public AgentRuntime {
 public:
  ToolAgents(std::shared_ptr<const Taxonomy> taxonomy, Extractor& extractor, ToolContext ctx = {})
      : taxonomy_(std::move(taxonomy)), extractor_(extractor), ctx_(std::move(ctx)) {}

  QueryProfile classify(const Query& q) override { return head_classify(q, extractor_, *taxonomy_); }
  AgentResult execute(Agent a, const Blackboard& bb, const Query& q) override {
    return execute_agent(a, bb, q, extractor_, ctx_);
  }
  FusionOutput fuse(const Blackboard& bb, const Query& q, const QueryProfile& profile) override {
    return agents::fuse(bb, q, profile, extractor_);
  }

 private:
  std::shared_ptr<const Taxonomy> taxonomy_;
  Extractor& extractor_;
  ToolContext ctx_;
};

}  // namespace star::agents
