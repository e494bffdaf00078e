#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "star/core/agent.hpp"
#include "star/core/status.hpp"
#include "star/core/value.hpp"

namespace star {

struct TraceStep {
  Agent agent = Agent::Head;
  Status status = Status::Init;
  bool operator==(const TraceStep&) const = default;
};

// A recovery transition found by evaluating a candidate specialist on the
// same query after an error state during training.
struct AugmentedTransition {
  Agent from = Agent::Head;
  Status status = Status::Fail;
  Agent to = Agent::Fusion;
  bool recovered = false;
  bool operator==(const AugmentedTransition&) const = default;
};

struct ExecutionTrace {
  std::string query_id;
  std::string task_type;
  std::vector<TraceStep> steps;
  bool correct = false;
  std::vector<AugmentedTransition> augmented;

  bool operator==(const ExecutionTrace&) const = default;
};

// Throws ValidationError unless steps is non-empty and starts at HEAD.
void validate_trace(const ExecutionTrace& trace);

Value to_json(const ExecutionTrace& trace);
ExecutionTrace trace_from_json(const Value& v);

// One record per line. Reading throws ParseError carrying the 1-based line.
void write_traces(std::ostream& out, std::span<const ExecutionTrace> traces);
std::vector<ExecutionTrace> read_traces(std::istream& in);

}  // namespace star
