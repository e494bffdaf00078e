#include <algorithm>
#include <cctype>

#include "star/agents/agent.hpp"

namespace star::agents {

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> strings(const Value& v) {
  std::vector<std::string> out;
  if (!v.is_array()) return out;
  for (const auto& x : v)
    if (x.is_string()) out.push_back(x.get<std::string>());
  return out;
}

}  // namespace

QueryProfile head_classify(const Query& q, Extractor& extractor, const Taxonomy& taxonomy) {
  QueryProfile p;
  p.task_type = std::string(kOpenTaskType);
  p.type = taxonomy.open();
  if (blank(q.text)) return p;

  std::optional<Value> raw;
  try {
    raw = extractor.profile(q);
  } catch (...) {
    return p;
  }
  if (!raw || !raw->is_object()) return p;
  const Value& r = *raw;
  if (r.contains("constraints")) p.constraints = strings(r["constraints"]);
  if (r.contains("benchmark") && r["benchmark"].is_string()) p.benchmark = r["benchmark"].get<std::string>();

  if (r.contains("sub_types")) {
    for (const auto& name : strings(r["sub_types"])) {
      auto a = parse_agent(name);
      if (a && is_specialist(*a) && std::find(p.sub_types.begin(), p.sub_types.end(), *a) == p.sub_types.end())
        p.sub_types.push_back(*a);
    }
    if (!p.sub_types.empty()) return p;
  }
  if (r.contains("task_type") && r["task_type"].is_string()) {
    p.task_type = r["task_type"].get<std::string>();
    p.type = taxonomy.resolve(p.task_type);
  }
  return p;
}

}  // namespace star::agents
