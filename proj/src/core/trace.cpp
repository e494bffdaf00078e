#include "star/core/trace.hpp"

#include <istream>
#include <ostream>

#include "star/core/error.hpp"

namespace star {

void validate_trace(const ExecutionTrace& trace) {
  if (trace.steps.empty()) throw ValidationError("trace " + trace.query_id + ": no steps");
  if (trace.steps.front().agent != Agent::Head)
    throw ValidationError("trace " + trace.query_id + ": first agent must be HEAD");
}

Value to_json(const ExecutionTrace& trace) {
  Value v;
  v["query_id"] = trace.query_id;
  v["task_type"] = trace.task_type;
  Value steps = Value::array();
  for (const auto& s : trace.steps)
    steps.push_back(Value::array({std::string(name_of(s.agent)), std::string(name_of(s.status))}));
  v["steps"] = std::move(steps);
  v["correct"] = trace.correct ? 1 : 0;
  Value aug = Value::array();
  for (const auto& a : trace.augmented) {
    Value r;
    r["from"] = std::string(name_of(a.from));
    r["status"] = std::string(name_of(a.status));
    r["to"] = std::string(name_of(a.to));
    r["recovered"] = a.recovered ? 1 : 0;
    aug.push_back(std::move(r));
  }
  v["augmented"] = std::move(aug);
  return v;
}

namespace {

Agent agent_field(const Value& v) {
  auto a = parse_agent(v.get<std::string>());
  if (!a) throw ValidationError("unknown agent '" + v.get<std::string>() + "'");
  return *a;
}

Status status_field(const Value& v) {
  auto s = parse_status(v.get<std::string>());
  if (!s) throw ValidationError("unknown status '" + v.get<std::string>() + "'");
  return *s;
}

bool bit_field(const Value& v) {
  if (v.is_boolean()) return v.get<bool>();
  auto n = v.get<int>();
  if (n != 0 && n != 1) throw ValidationError("bit field must be 0 or 1");
  return n == 1;
}

}  // namespace

ExecutionTrace trace_from_json(const Value& v) {
  ExecutionTrace t;
  t.query_id = v.at("query_id").get<std::string>();
  t.task_type = v.at("task_type").get<std::string>();
  for (const auto& step : v.at("steps")) {
    if (!step.is_array() || step.size() != 2) throw ValidationError("trace step must be [agent, status]");
    t.steps.push_back({agent_field(step[0]), status_field(step[1])});
  }
  t.correct = bit_field(v.at("correct"));
  if (auto it = v.find("augmented"); it != v.end()) {
    for (const auto& a : *it)
      t.augmented.push_back(
          {agent_field(a.at("from")), status_field(a.at("status")), agent_field(a.at("to")), bit_field(a.at("recovered"))});
  }
  validate_trace(t);
  return t;
}

void write_traces(std::ostream& out, std::span<const ExecutionTrace> traces) {
  for (const auto& t : traces) out << to_json(t).dump() << '\n';
}

std::vector<ExecutionTrace> read_traces(std::istream& in) {
  std::vector<ExecutionTrace> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(trace_from_json(Value::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("trace record: ") + e.what(), lineno);
    } catch (const ValidationError& e) {
      throw ParseError(std::string("trace record: ") + e.what(), lineno);
    }
  }
  return out;
}

}  // namespace star
