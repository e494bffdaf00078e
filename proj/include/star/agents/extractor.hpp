#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "star/agents/menu.hpp"
#include "star/core/agent.hpp"
#include "star/core/blackboard.hpp"
#include "star/core/taxonomy.hpp"
#include "star/core/value.hpp"

namespace star::agents {

struct Query {
  std::string id;
  std::string text;
};

// m* and theta. A parameter of the form {"$ref": "key.path"} reads an
// upstream blackboard value at execution time.
struct MenuSelection {
  std::string operation;  // empty: nothing on the menu applies
  Value params = Value::object();
  bool resolved = true;   // extractor grounded every parameter
};

// Builds a selection from a reply record: "operation" plus parameters;
// "resolved" or "coordinates_resolved" set the resolved flag.
MenuSelection selection_from_json(const Value& v);

struct QueryProfile {
  std::string task_type;            // as classified; unregistered names route as OPEN
  TaskType type;
  std::vector<Agent> sub_types;     // composite mode when non-empty
  std::vector<std::string> constraints;
  std::string benchmark;

  bool composite() const noexcept { return !sub_types.empty(); }
};

Value to_json(const QueryProfile& p);

// Selection/extraction backend behind every agent. Implementations must be
// safe to call concurrently from scatter workers.
class Extractor {
 public:
  virtual ~Extractor() = default;

  // HEAD: raw profile record ({"task_type": ...} or {"sub_types": [...]}).
  virtual std::optional<Value> profile(const Query& q) = 0;
  // Specialists: pick an operation and parameters. May throw.
  virtual MenuSelection select(Agent a, const Query& q, const Blackboard& bb, const ComputationMenu& menu) = 0;
  // FUSION fallback and SEMANTIC: free-form answer, nullopt when unknown.
  virtual std::optional<std::string> answer(Agent a, const Query& q, const Blackboard& bb, const QueryProfile& profile) = 0;
};

// First <JSON>...</JSON> fenced record in text, else the first balanced
// {...} that parses. nullopt when neither exists.
std::optional<Value> extract_fenced_json(std::string_view text);

}  // namespace star::agents
