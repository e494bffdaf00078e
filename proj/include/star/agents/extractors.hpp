#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "star/agents/extractor.hpp"

namespace star::agents {

// Fixture playback. Each JSONL record names the query (by "query_id" or
// exact "query" text) and the agent, and carries one of:
//   HEAD:        "profile": {...}
//   specialists: "selection": {...} or "reply": "<JSON>...</JSON>"
//   FUSION/SEMANTIC: "answer": "..."
// Queries or agents without a record select nothing (-> MISS) and answer
// nothing.
class ReplayExtractor final : public Extractor {
 public:
  ReplayExtractor() = default;
  static ReplayExtractor from_file(const std::filesystem::path& path);
  static ReplayExtractor from_jsonl(std::string_view text);

  void add(const Value& record);
  std::size_t size() const noexcept { return records_.size(); }

  std::optional<Value> profile(const Query& q) override;
  MenuSelection select(Agent a, const Query& q, const Blackboard& bb, const ComputationMenu& menu) override;
  std::optional<std::string> answer(Agent a, const Query& q, const Blackboard& bb, const QueryProfile& profile) override;

 private:
  const Value* find(const Query& q, Agent a) const;
  std::map<std::pair<std::string, Agent>, Value> records_;
};

// Rule-based parsing of the benchmarks' templated query formats
// (coordinates, interval literals, "Node i -> Node j" edges). Deterministic.
class ScriptedExtractor final : public Extractor {
 public:
  std::optional<Value> profile(const Query& q) override;
  MenuSelection select(Agent a, const Query& q, const Blackboard& bb, const ComputationMenu& menu) override;
  std::optional<std::string> answer(Agent a, const Query& q, const Blackboard& bb, const QueryProfile& profile) override;
};

struct RemoteConfig {
  std::string base_url;  // http://host:port[/prefix]
  std::string api_key;
  std::string model;
  int timeout_seconds = 60;

  // STAR_LLM_BASE_URL, STAR_LLM_API_KEY, STAR_LLM_MODEL. nullopt without a base URL.
  static std::optional<RemoteConfig> from_env();
};

// Chat-completions adapter: sends the agent's prompt asset plus the query and
// board, then reads the fenced record out of the reply. Plain HTTP only.
class RemoteExtractor final : public Extractor {
 public:
  explicit RemoteExtractor(RemoteConfig cfg);

  std::optional<Value> profile(const Query& q) override;
  MenuSelection select(Agent a, const Query& q, const Blackboard& bb, const ComputationMenu& menu) override;
  std::optional<std::string> answer(Agent a, const Query& q, const Blackboard& bb, const QueryProfile& profile) override;

  // One chat round trip; throws Error on transport or protocol failure.
  std::string chat(std::string_view system_prompt, std::string_view user_message);

 private:
  RemoteConfig cfg_;
};

// Versioned prompt text for an agent ("head", "spatial", ...). Looked up in
// $STAR_ASSET_DIR, then the source tree's assets directory.
std::string prompt_asset(std::string_view name);

}  // namespace star::agents
