#include "star/agents/extractor.hpp"

#include <string>

namespace star::agents {

MenuSelection selection_from_json(const Value& v) {
  MenuSelection s;
  if (!v.is_object()) return s;
  Value params = v;
  if (params.contains("operation") && params["operation"].is_string()) {
    s.operation = params["operation"].get<std::string>();
  } else if (params.contains("relation") && params["relation"].is_string() &&
             (params.contains("interval_1") || params.contains("interval_a"))) {
    // Temporal replies sometimes name only the Allen relation.
    s.operation = "allen_" + params["relation"].get<std::string>();
  }
  params.erase("operation");
  for (const char* flag : {"resolved", "coordinates_resolved"}) {
    if (params.contains(flag)) {
      if (params[flag].is_boolean() && !params[flag].get<bool>()) s.resolved = false;
      params.erase(flag);
    }
  }
  s.params = std::move(params);
  return s;
}

Value to_json(const QueryProfile& p) {
  Value v = Value::object();
  if (p.composite()) {
    Value subs = Value::array();
    for (Agent a : p.sub_types) subs.push_back(std::string(name_of(a)));
    v["sub_types"] = std::move(subs);
  } else {
    v["task_type"] = p.task_type;
  }
  v["constraints"] = p.constraints;
  v["benchmark"] = p.benchmark;
  return v;
}

namespace {

std::optional<Value> parse_object(std::string_view text) {
  Value v = Value::parse(text.begin(), text.end(), nullptr, false);
  if (v.is_discarded() || !v.is_object()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Value> extract_fenced_json(std::string_view text) {
  constexpr std::string_view open = "<JSON>", close = "</JSON>";
  if (auto a = text.find(open); a != std::string_view::npos) {
    const auto body = a + open.size();
    if (auto b = text.find(close, body); b != std::string_view::npos)
      if (auto v = parse_object(text.substr(body, b - body))) return v;
  }
  // First balanced {...} that parses; braces inside strings are skipped.
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false, escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped) escaped = false;
        else if (c == '\\') escaped = true;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}' && --depth == 0) {
        if (auto v = parse_object(text.substr(start, i - start + 1))) return v;
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace star::agents
