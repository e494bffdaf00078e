#include <fstream>
#include <sstream>

#include "star/agents/extractors.hpp"
#include "star/core/error.hpp"

namespace star::agents {

ReplayExtractor ReplayExtractor::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open replay fixture " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str());
}

ReplayExtractor ReplayExtractor::from_jsonl(std::string_view text) {
  ReplayExtractor r;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Value v = Value::parse(line.begin(), line.end(), nullptr, false);
    if (v.is_discarded()) throw ParseError("malformed replay record", line_no);
    try {
      r.add(v);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return r;
}

void ReplayExtractor::add(const Value& record) {
  if (!record.is_object()) throw ValidationError("replay record must be an object");
  std::string key;
  if (record.contains("query_id") && record["query_id"].is_string()) key = record["query_id"].get<std::string>();
  else if (record.contains("query") && record["query"].is_string()) key = record["query"].get<std::string>();
  else throw ValidationError("replay record needs query_id or query");
  if (!record.contains("agent") || !record["agent"].is_string()) throw ValidationError("replay record needs agent");
  auto a = parse_agent(record["agent"].get<std::string>());
  if (!a) throw ValidationError("unknown agent '" + record["agent"].get<std::string>() + "'");
  records_[{key, *a}] = record;
}

const Value* ReplayExtractor::find(const Query& q, Agent a) const {
  if (!q.id.empty())
    if (auto it = records_.find({q.id, a}); it != records_.end()) return &it->second;
  if (auto it = records_.find({q.text, a}); it != records_.end()) return &it->second;
  return nullptr;
}

std::optional<Value> ReplayExtractor::profile(const Query& q) {
  const Value* r = find(q, Agent::Head);
  if (r == nullptr) return std::nullopt;
  if (r->contains("profile")) return (*r)["profile"];
  if (r->contains("reply") && (*r)["reply"].is_string()) return extract_fenced_json((*r)["reply"].get<std::string>());
  return std::nullopt;
}

MenuSelection ReplayExtractor::select(Agent a, const Query& q, const Blackboard&, const ComputationMenu&) {
  const Value* r = find(q, a);
  if (r == nullptr) return {};
  if (r->contains("selection")) return selection_from_json((*r)["selection"]);
  if (r->contains("reply") && (*r)["reply"].is_string()) {
    auto v = extract_fenced_json((*r)["reply"].get<std::string>());
    if (!v) throw ParseError("reply carries no structured record", 0);
    return selection_from_json(*v);
  }
  return {};
}

std::optional<std::string> ReplayExtractor::answer(Agent a, const Query& q, const Blackboard&, const QueryProfile&) {
  const Value* r = find(q, a);
  if (r == nullptr || !r->contains("answer") || !(*r)["answer"].is_string()) return std::nullopt;
  return (*r)["answer"].get<std::string>();
}

}  // namespace star::agents
