#include <cmath>
#include <cstdio>
#include <string>

#include "star/agents/agent.hpp"
#include "star/agents/menu.hpp"

namespace star::agents {

namespace {

constexpr double kConfidenceFloor = 0.5;

bool is_stark(const QueryProfile& p) {
  return p.benchmark == "STARK" || p.task_type.rfind("STARK_", 0) == 0;
}

std::string number_text(double x) {
  if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string plain_text(const Value& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string format_answer(const QueryProfile& p, const Value& v) {
  if (is_stark(p)) {
    std::string inner;
    if (v.is_boolean()) inner = v.get<bool>() ? "1.0" : "0.0";
    else if (v.is_number()) inner = number_text(v.get<double>());
    else inner = plain_text(v);
    return "[RESULTS_START] [" + inner + "] [RESULTS_END]";
  }
  return "<answer>" + plain_text(v) + "</answer>";
}

// Latest successful payload for an agent, if any.
const Value* success(const Blackboard& bb, Agent a) {
  const auto* e = bb.latest(result_key(a));
  if (e == nullptr || !e->payload.is_object()) return nullptr;
  const Value& v = e->payload;
  if (v.contains("status") && v["status"] != "SUCC") return nullptr;
  return &v;
}

bool confident(const Value& v) {
  if (!v.contains("tool_confidence")) return true;
  return v["tool_confidence"].is_number() && v["tool_confidence"].get<double>() >= kConfidenceFloor;
}

std::optional<bool> holds_flag(const Value& v) {
  for (const char* k : {"direction_holds", "spatial_relation_holds", "relation_holds", "holds", "within"})
    if (v.contains(k) && v[k].is_boolean()) return v[k].get<bool>();
  return std::nullopt;
}

FusionOutput templated(std::string answer, const char* source) { return {std::move(answer), false, source}; }

std::optional<FusionOutput> composite(const Blackboard& bb, const QueryProfile& p) {
  Value parts = Value::object();
  for (std::size_t i = 0; i < p.sub_types.size(); ++i) {
    int bit = 0;
    if (const Value* v = success(bb, p.sub_types[i]))
      if (auto h = holds_flag(*v)) bit = *h ? 1 : 0;
    parts["part" + std::to_string(i + 1)] = bit;
  }
  return templated(parts.dump(), "composite");
}

std::optional<FusionOutput> from_templates(const Blackboard& bb, const QueryProfile& p) {
  if (p.composite()) return composite(bb, p);

  const Value* topo = success(bb, Agent::Topological);
  if (topo && topo->contains("matching_options") && confident(*topo)) {
    const Value& m = (*topo)["matching_options"];
    if (m.is_array() && m.size() == 1) return templated(format_answer(p, m[0]), "structural_filter");
  }

  const Value* sp = success(bb, Agent::Spatial);
  if (sp && sp->contains("matched_option") && confident(*sp)) {
    const double score = sp->contains("match_score") ? (*sp)["match_score"].get<double>() : 1.0;
    if (score >= kConfidenceFloor) return templated(format_answer(p, (*sp)["matched_option"]), "admin_region");
  }
  if (sp && sp->contains("direction_holds")) return templated(format_answer(p, (*sp)["direction_holds"]), "direction");
  if (sp && sp->contains("direction_result")) return templated(format_answer(p, (*sp)["direction_result"]), "direction");

  // Relationship flags; every participating agent must agree.
  const Value* tp = success(bb, Agent::Temporal);
  const Value* tr = success(bb, Agent::Trajectory);
  std::optional<bool> sp_holds = sp ? holds_flag(*sp) : std::nullopt;
  std::optional<bool> tp_holds = tp ? holds_flag(*tp) : std::nullopt;
  std::optional<bool> tr_holds = tr ? holds_flag(*tr) : std::nullopt;
  const bool needs_both = p.task_type == "STARK_SPATIOTEMPORAL_RELATIONSHIP";
  if (needs_both) {
    if (sp_holds && tp_holds) return templated(format_answer(p, *sp_holds && *tp_holds), "relationship");
  } else if (sp_holds || tp_holds || tr_holds) {
    bool all = true;
    for (const auto& h : {sp_holds, tp_holds, tr_holds})
      if (h) all = all && *h;
    return templated(format_answer(p, all), "relationship");
  }

  if (const Value* nav = success(bb, Agent::Navigation)) {
    if (nav->contains("eta_s")) return templated(format_answer(p, (*nav)["eta_s"]), "navigation");
    if (nav->contains("cost")) return templated(format_answer(p, (*nav)["cost"]), "navigation");
  }
  if (tp && tp->contains("forecast")) return templated(format_answer(p, (*tp)["forecast"]), "forecast");
  if (tp && tp->contains("allen_relation")) return templated(format_answer(p, (*tp)["allen_relation"]), "allen");

  if (const Value* sem = success(bb, Agent::Semantic); sem && sem->contains("answer"))
    return templated((*sem)["answer"].get<std::string>(), "semantic");

  for (Agent a : kSpecialists)
    if (const Value* v = success(bb, a); v && v->contains("answer"))
      return templated(format_answer(p, (*v)["answer"]), "answer_field");
  return std::nullopt;
}

}  // namespace

FusionOutput fuse(const Blackboard& bb, const Query& q, const QueryProfile& profile, Extractor& extractor) {
  try {
    if (auto t = from_templates(bb, profile)) return *t;
  } catch (...) {
    // Malformed board payloads fall through to the extractor.
  }
  try {
    if (auto a = extractor.answer(Agent::Fusion, q, bb, profile); a && !a->empty())
      return {*a, true, "extractor"};
  } catch (...) {
  }
  return {is_stark(profile) ? "[RESULTS_START] [0.0] [RESULTS_END]" : "<answer>unknown</answer>", false, "default"};
}

}  // namespace star::agents
