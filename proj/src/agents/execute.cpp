#include <algorithm>
#include <cctype>
#include <functional>
#include <string>

#include "params.hpp"
#include "star/agents/agent.hpp"
#include "star/agents/trajectory.hpp"
#include "star/core/error.hpp"
#include "star/graph/graph.hpp"
#include "star/spatial/geodesy.hpp"
#include "star/spatial/predicates.hpp"
#include "star/spatial/text_match.hpp"
#include "star/temporal/interval.hpp"
#include "star/agents/text.hpp"

namespace star::agents {

using namespace detail;

namespace {

// A tool could not find what the query needs (landmark, geocoder entry):
// a tool/query mismatch rather than a malformed result.
struct Missing : LookupError {
  Missing(const std::string& what, Value detail_payload) : LookupError(what), detail(std::move(detail_payload)) {}
  Value detail;
};

spatial::Frame frame_param(const Value& p, spatial::Frame fallback) {
  auto f = opt_string(p, "frame");
  if (!f) return fallback;
  if (*f == "geographic" || *f == "geo") return spatial::Frame::Geographic;
  if (*f == "planar") return spatial::Frame::Planar;
  throw ValidationError("unknown frame '" + *f + "'");
}

bool flag(const Value& p, const char* name) { return p.contains(name) && p[name].is_boolean() && p[name].get<bool>(); }

// -- SPATIAL ---------------------------------------------------------------

spatial::Point resolve_place(const Value& v, const Blackboard& bb, const ToolContext& ctx) {
  if (!v.is_string()) return to_point(v, spatial::Frame::Geographic);
  const std::string name = v.get<std::string>();
  if (auto it = ctx.gazetteer.find(name); it != ctx.gazetteer.end()) return it->second;
  if (const auto* reg = bb.latest("navigation_data"); reg && reg->payload.contains("poi_registry")) {
    const Value& r = reg->payload["poi_registry"];
    if (r.is_object() && r.contains(name)) return to_point(r[name], spatial::Frame::Geographic);
  }
  throw LookupError(name);
}

int direction_wedge(std::string text) {
  std::string t;
  for (char c : text)
    if (std::isalpha(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t.size() > 2 && t.substr(t.size() - 2) == "of") t.resize(t.size() - 2);
  static const std::vector<std::pair<std::string, int>> names = {
      {"north", 1}, {"northeast", 2}, {"east", 3}, {"southeast", 4},
      {"south", 5}, {"southwest", 6}, {"west", 7}, {"northwest", 8}};
  for (const auto& [n, w] : names)
    if (t == n) return w;
  throw ValidationError("unknown direction '" + text + "'");
}

std::vector<std::string> option_list(const Value& v) {
  if (v.is_array()) {
    std::vector<std::string> out;
    for (const auto& o : v) out.push_back(o.get<std::string>());
    return out;
  }
  if (v.is_string()) {
    // "(0): Newport, PA (1): Presto, PA ..."
    const std::string s = v.get<std::string>();
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = s.find('(', pos)) != std::string::npos) {
      const std::size_t close = s.find("):", pos);
      if (close == std::string::npos) break;
      const std::size_t next = s.find(" (", close);
      std::string text = s.substr(close + 2, next == std::string::npos ? std::string::npos : next - close - 2);
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(text.begin());
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
      out.push_back(text);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (!out.empty()) return out;
  }
  throw ValidationError("options must be a list of names");
}

Value run_spatial(const std::string& op, const Value& p, const Blackboard& bb, const ToolContext& ctx) {
  Value out = Value::object();
  if (op == "compass_direction") {
    const auto a = to_point(require(p, "geom_1"), spatial::Frame::Geographic);
    const auto b = to_point(require(p, "geom_2"), spatial::Frame::Geographic);
    const double bearing = spatial::compass_bearing(spatial::geographic(a.x, a.y), spatial::geographic(b.x, b.y));
    const auto rule = opt_string(p, "wedge_rule").value_or("symmetric") == "compat" ? spatial::WedgeRule::Compat
                                                                                    : spatial::WedgeRule::Symmetric;
    const int wedge = spatial::bearing_to_wedge(bearing, rule);
    out["direction_result"] = wedge;
    out["bearing_deg"] = bearing;
    out["direction_name"] = spatial::wedge_name(wedge);
    return out;
  }
  if (op == "haversine_distance") {
    const auto a = to_point(require(p, "geom_1"), spatial::Frame::Geographic);
    const auto b = to_point(require(p, "geom_2"), spatial::Frame::Geographic);
    out["distance_m"] = spatial::haversine_distance(spatial::geographic(a.x, a.y), spatial::geographic(b.x, b.y));
    return out;
  }
  if (op == "landmark_direction") {
    std::vector<std::string> unresolved;
    std::optional<spatial::Point> a, b;
    try {
      a = resolve_place(require(p, "geom_1"), bb, ctx);
    } catch (const LookupError& e) {
      unresolved.push_back(e.what());
    }
    try {
      b = resolve_place(require(p, "geom_2"), bb, ctx);
    } catch (const LookupError& e) {
      unresolved.push_back(e.what());
    }
    if (!unresolved.empty())
      throw Missing("landmark coordinates unavailable", {{"missing", "landmark_coordinates"}, {"raw_names", unresolved}});
    const double bearing = spatial::compass_bearing(*a, *b);
    const int wedge = spatial::bearing_to_wedge(bearing);
    out["direction_result"] = wedge;
    out["bearing_deg"] = bearing;
    out["direction_name"] = spatial::wedge_name(wedge);
    if (auto proposed = opt_string(p, "proposed_direction")) {
      out["proposed_direction"] = *proposed;
      out["direction_holds"] = direction_wedge(*proposed) == wedge;
    }
    return out;
  }
  if (op == "admin_region_lookup") {
    const Value& coords = require(p, "coordinates");
    const Value& c = coords.is_array() && !coords.empty() && coords[0].is_object() ? coords[0] : coords;
    const auto pt = to_point(c, spatial::Frame::Geographic);
    const auto options = option_list(require(p, "options"));
    if (ctx.geocoder == nullptr) throw Missing("no geocoder configured", {{"missing", "geocoder"}});
    std::string name;
    try {
      name = ctx.geocoder->reverse(pt.y, pt.x);
    } catch (const LookupError& e) {
      throw Missing(e.what(), {{"missing", "geocoded_name"}});
    }
    const auto m = spatial::admin_region_match(name, options);
    out["geocoded_name"] = name;
    out["matched_option"] = m.index;
    out["match_score"] = m.score;
    out["option_scores"] = m.scores;
    out["tool_confidence"] = m.score;
    return out;
  }
  if (op == "localization") {
    const Value& obs = require(p, "observations");
    if (!obs.is_array()) throw ValidationError("observations must be a list");
    const auto frame = frame_param(p, spatial::Frame::Planar);
    std::vector<spatial::Observation> list;
    for (const auto& o : obs) {
      spatial::Observation x;
      x.anchor = to_point(require(o, "anchor"), frame);
      if (o.contains("bearing") && !o["bearing"].is_null()) x.bearing_deg = o["bearing"].get<double>();
      if (o.contains("range") && !o["range"].is_null()) x.range = o["range"].get<double>();
      list.push_back(x);
    }
    const auto fix = spatial::localize(list);
    out["location"] = Value::array({fix.point.x, fix.point.y});
    out["residual"] = fix.residual;
    return out;
  }

  // Relation predicates, optionally with the event interval.
  const bool interval_only = op == "compute_event_interval";
  const auto relation = spatial::parse_relation(interval_only ? opt_string(p, "relation").value_or("within") : op);
  const auto frame = frame_param(p, spatial::Frame::Planar);
  const auto g1 = to_geometry(require(p, "geom_1"), opt_string(p, "geom_1_type"), frame);
  const auto g2 = to_geometry(require(p, "geom_2"), opt_string(p, "geom_2_type"), frame);
  out["relation"] = spatial::name_of(relation);
  if (!interval_only) {
    const bool holds = spatial::spatial_predicate(relation, g1, g2);
    out["spatial_relation_holds"] = holds;
    out["holds"] = holds;
  }
  if (interval_only || flag(p, "compute_event_interval")) {
    spatial::TimedTrajectory traj{g1.vertices, to_series(require(p, "timestamps"))};
    const auto ev = spatial::predicate_with_event_interval(relation, traj, g2);
    out["event_holds"] = ev.holds;
    out["event_interval"] = ev.interval ? interval_json(*ev.interval) : Value();
    if (interval_only) out["holds"] = ev.holds;
  }
  return out;
}

// -- TEMPORAL --------------------------------------------------------------

const Value& interval_param(const Value& p, const char* primary, const char* alias) {
  if (p.contains(primary)) return require(p, primary);
  return require(p, alias);
}

Value run_temporal(const std::string& op, const Value& p) {
  Value out = Value::object();
  if (op == "interval_set") {
    const std::string name = require(p, "op").get<std::string>();
    const temporal::SetOp setop = name == "union"          ? temporal::SetOp::Union
                                  : name == "intersection" ? temporal::SetOp::Intersection
                                  : name == "difference"   ? temporal::SetOp::Difference
                                                           : throw ValidationError("unknown set operation '" + name + "'");
    const auto a = to_intervals(require(p, "sets_a"));
    const auto b = p.contains("sets_b") ? to_intervals(p["sets_b"]) : std::vector<temporal::Interval>{};
    Value r = Value::array();
    for (const auto& i : temporal::interval_set(setop, a, b)) r.push_back(interval_json(i));
    out["op"] = name;
    out["result"] = std::move(r);
    return out;
  }
  if (op == "forecast") {
    temporal::ForecastOptions fo;
    if (p.contains("period") && !p["period"].is_null()) fo.period = to_count(p["period"], "period");
    if (p.contains("window") && !p["window"].is_null()) fo.window = to_count(p["window"], "window");
    const auto series = to_series(require(p, "series"));
    const auto f = temporal::forecast(series, to_count(require(p, "horizon"), "horizon"), fo);
    out["forecast"] = f;
    out["period"] = fo.period ? *fo.period : temporal::infer_period(series).value_or(1);
    return out;
  }
  const auto a = to_interval(interval_param(p, "interval_a", "interval_1"));
  const auto b = to_interval(interval_param(p, "interval_b", "interval_2"));
  out["interval_a"] = interval_json(a);
  out["interval_b"] = interval_json(b);
  if (op == "allen_classify") {
    out["allen_relation"] = temporal::name_of(temporal::classify_allen(a, b));
    return out;
  }
  const auto rel = temporal::parse_allen(op);
  const bool holds = temporal::allen_relation(rel, a, b);
  out["allen_relation"] = temporal::name_of(rel);
  out["holds"] = holds;
  out["relation_holds"] = holds;
  return out;
}

// -- TRAJECTORY ------------------------------------------------------------

spatial::TimedTrajectory trajectory_param(const Value& p) {
  spatial::TimedTrajectory t;
  t.points = to_points(require(p, "trajectory"), frame_param(p, spatial::Frame::Planar));
  if (p.contains("timestamps") && !p["timestamps"].is_null()) {
    t.timestamps = to_series(p["timestamps"]);
  } else {
    for (std::size_t i = 0; i < t.points.size(); ++i) t.timestamps.push_back(static_cast<double>(i));
  }
  return t;
}

Value run_trajectory(const std::string& op, const Value& p) {
  Value out = Value::object();
  const auto traj = trajectory_param(p);
  if (op == "trajectory_anomaly") {
    const double factor = p.contains("factor") ? p["factor"].get<double>() : 3.0;
    const auto idx = trajectory_anomalies(traj, factor);
    out["anomalies"] = idx;
    out["has_anomaly"] = !idx.empty();
    return out;
  }
  if (op == "trajectory_predict") {
    const std::size_t k = p.contains("k") ? to_count(p["k"], "k") : 3;
    const auto f = trajectory_predict(traj, to_count(require(p, "horizon"), "horizon"), k);
    Value pts = Value::array();
    for (const auto& pt : f.points) pts.push_back(Value::array({pt.x, pt.y}));
    out["predicted"] = std::move(pts);
    out["timestamps"] = f.timestamps;
    return out;
  }
  // region_classify
  const auto region = spatial::Geometry::polygon(to_points(require(p, "region"), traj.points.front().frame));
  const auto m = trajectory_region(traj, region);
  out["within"] = m.within;
  out["holds"] = m.within;
  out["inside_fraction"] = m.inside_fraction;
  out["event_interval"] = m.event.interval ? interval_json(*m.event.interval) : Value();
  return out;
}

// -- TOPOLOGICAL -----------------------------------------------------------

std::vector<graph::McqOption> mcq_param(const Value& v) {
  std::vector<graph::McqOption> out;
  if (v.is_string()) return parse_mcq_options(v.get<std::string>());
  if (!v.is_array()) throw ValidationError("mcq_options must be a list");
  for (const auto& o : v) {
    if (o.is_object()) {
      out.push_back({require(o, "label").get<std::string>(), to_count(require(o, "node_count"), "node_count")});
    } else if (o.is_string()) {
      auto parsed = parse_mcq_options(o.get<std::string>());
      if (parsed.size() != 1) throw ValidationError("cannot read node count from option '" + o.get<std::string>() + "'");
      out.push_back(parsed.front());
    } else {
      throw ValidationError("mcq option must be a string or {label, node_count}");
    }
  }
  return out;
}

Value onsets_json(const graph::CascadeResult& c) {
  Value o = Value::object();
  for (const auto& [node, idx] : c.onsets) o[std::to_string(node)] = idx;
  return o;
}

Value run_topological(const std::string& op, const Value& p) {
  Value out = Value::object();
  if (op == "pairwise_causality") {
    const auto c = graph::pairwise_causality(to_series(require(p, "xs")), to_series(require(p, "ys")),
                                             to_count(require(p, "max_lag"), "max_lag"));
    out["best_lag"] = c.lag;
    out["score"] = c.score;
    return out;
  }
  const Value* nodes = p.contains("nodes") ? &p["nodes"] : nullptr;
  const auto g = to_graph(require(p, "edges"), nodes);
  if (op == "detect_cascade") {
    const double thr = p.contains("threshold") ? p["threshold"].get<double>() : 2.0;
    const auto c = graph::detect_cascade(to_node_series(require(p, "series")), g, thr);
    out["cascade_onsets"] = onsets_json(c);
    out["propagation_consistency"] = c.consistency;
    return out;
  }
  const auto s = graph::analyze_topology(g);
  out["n_nodes"] = s.n_nodes;
  out["n_edges"] = s.n_edges;
  out["cyclic"] = s.cyclic;
  out["source"] = s.source ? Value(*s.source) : Value();
  out["longest_path"] = s.longest_path;
  out["centrality_node"] = s.centrality_node ? Value(*s.centrality_node) : Value();
  if (p.contains("mcq_options") && !p["mcq_options"].is_null()) {
    const auto options = mcq_param(p["mcq_options"]);
    const auto f = graph::mcq_structural_filter(s, options);
    Value scores = Value::object();
    for (std::size_t i = 0; i < options.size(); ++i) scores[options[i].label] = f.scores[i];
    out["mcq_scores"] = std::move(scores);
    out["matching_options"] = f.matching;
    out["tool_confidence"] = f.tool_confidence;
  }
  if (p.contains("series") && p["series"].is_object() && !p["series"].empty()) {
    const auto c = graph::detect_cascade(to_node_series(p["series"]), g);
    out["cascade_onsets"] = onsets_json(c);
    out["propagation_consistency"] = c.consistency;
  }
  return out;
}

// -- NAVIGATION ------------------------------------------------------------

Value run_navigation(const std::string& op, const Value& p) {
  Value out = Value::object();
  const Value* nodes = p.contains("nodes") ? &p["nodes"] : nullptr;
  const auto g = to_graph(require(p, "edges"), nodes);
  if (op == "shortest_path") {
    const auto r = graph::shortest_path(g, require(p, "source").get<graph::NodeId>(), require(p, "target").get<graph::NodeId>());
    out["path"] = r.path;
    out["cost"] = r.cost;
    if (p.contains("speed") && p["speed"].is_number()) out["eta_s"] = graph::eta(r.path, g, p["speed"].get<double>());
    return out;
  }
  const Value& path = require(p, "path");
  out["eta_s"] = graph::eta(path.get<std::vector<graph::NodeId>>(), g, require(p, "speed").get<double>());
  return out;
}

Value compute(Agent a, const std::string& op, const Value& params, const Blackboard& bb, const ToolContext& ctx) {
  switch (a) {
    case Agent::Spatial: return run_spatial(op, params, bb, ctx);
    case Agent::Temporal: return run_temporal(op, params);
    case Agent::Trajectory: return run_trajectory(op, params);
    case Agent::Topological: return run_topological(op, params);
    case Agent::Navigation: return run_navigation(op, params);
    default: throw ContractError("agent has no computation menu");
  }
}

bool kind_matches(ParamKind kind, const Value& v) {
  switch (kind) {
    case ParamKind::Any: return true;
    case ParamKind::Number: return v.is_number();
    case ParamKind::Integer: return v.is_number_integer() || (v.is_number() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
    case ParamKind::Bool: return v.is_boolean();
    case ParamKind::String: return v.is_string();
    case ParamKind::Point: return (v.is_array() && v.size() == 2) || v.is_object();
    case ParamKind::PointList:
    case ParamKind::IntervalList:
    case ParamKind::Series: return v.is_array();
    case ParamKind::Interval: return (v.is_array() && v.size() == 2) || v.is_object();
    case ParamKind::Object: return v.is_object();
  }
  return false;
}

void validate_params(const MenuEntry& entry, const Value& params) {
  if (!params.is_object()) throw ValidationError("parameters must be a record");
  for (const auto& param : entry.params) {
    const bool present = params.contains(param.name) && !params.at(param.name).is_null();
    // Temporal selections sometimes name the intervals interval_1/interval_2.
    const bool aliased = (param.name == "interval_a" && params.contains("interval_1")) ||
                         (param.name == "interval_b" && params.contains("interval_2"));
    if (!present) {
      if (param.required && !aliased) throw ValidationError("missing parameter '" + param.name + "'");
      continue;
    }
    if (!kind_matches(param.kind, params.at(param.name)))
      throw ValidationError("parameter '" + param.name + "' is not a " + std::string(name_of(param.kind)));
  }
}

Value status_payload(Status s, const std::string& op) {
  Value v = Value::object();
  v["status"] = name_of(s);
  if (!op.empty()) v["operation"] = op;
  return v;
}

AgentResult finish(Agent a, Status s, Value payload) {
  AgentResult r;
  r.status = s;
  r.deposits.push_back({a, std::string(result_key(a)), std::move(payload)});
  return r;
}

AgentResult execute_semantic(const Blackboard& bb, const Query& q, Extractor& extractor) {
  try {
    QueryProfile none;
    auto ans = extractor.answer(Agent::Semantic, q, bb, none);
    if (!ans || ans->empty()) {
      Value v = status_payload(Status::Miss, "");
      v["missing"] = "knowledge_answer";
      return finish(Agent::Semantic, Status::Miss, std::move(v));
    }
    Value v = status_payload(Status::Succ, "knowledge_answer");
    v["answer"] = *ans;
    return finish(Agent::Semantic, Status::Succ, std::move(v));
  } catch (const std::exception& e) {
    Value v = status_payload(Status::Fail, "");
    v["error"] = e.what();
    return finish(Agent::Semantic, Status::Fail, std::move(v));
  }
}

}  // namespace

AgentResult execute_agent(Agent a, const Blackboard& bb, const Query& q, Extractor& extractor, const ToolContext& ctx) {
  if (!is_specialist(a)) {
    Value v = status_payload(Status::Fail, "");
    v["error"] = std::string(name_of(a)) + " is not a specialist";
    return finish(a, Status::Fail, std::move(v));
  }
  if (a == Agent::Semantic) return execute_semantic(bb, q, extractor);

  const ComputationMenu& menu = menu_for(a);
  MenuSelection sel;
  try {
    sel = extractor.select(a, q, bb, menu);
  } catch (const std::exception& e) {
    Value v = status_payload(Status::Fail, "");
    v["error"] = std::string("selection failed: ") + e.what();
    return finish(a, Status::Fail, std::move(v));
  }

  if (sel.operation.empty()) {
    Value v = status_payload(Status::Miss, "");
    v["missing"] = "applicable_operation";
    return finish(a, Status::Miss, std::move(v));
  }
  const MenuEntry* entry = menu.find(sel.operation);
  if (entry == nullptr) {
    Value v = status_payload(Status::Fail, sel.operation);
    v["error"] = "operation '" + sel.operation + "' is not on the " + std::string(name_of(a)) + " menu";
    return finish(a, Status::Fail, std::move(v));
  }

  Value params = sel.params;
  try {
    if (auto missing = resolve_refs(params, bb)) {
      Value v = status_payload(Status::Block, sel.operation);
      v["missing"] = *missing;
      return finish(a, Status::Block, std::move(v));
    }
  } catch (const std::exception& e) {
    Value v = status_payload(Status::Fail, sel.operation);
    v["error"] = e.what();
    return finish(a, Status::Fail, std::move(v));
  }

  // Landmark names can still be grounded from the gazetteer or an upstream
  // poi_registry; the tool reports MISS itself when they cannot.
  if (!sel.resolved && sel.operation != "landmark_direction") {
    Value v = status_payload(Status::Miss, sel.operation);
    if (params.is_object() && params.contains("missing")) {
      v["missing"] = params["missing"];
      if (params.contains("raw_names")) v["raw_names"] = params["raw_names"];
    } else {
      v["missing"] = "unresolved_parameters";
    }
    return finish(a, Status::Miss, std::move(v));
  }

  try {
    validate_params(*entry, params);
    Value result = compute(a, sel.operation, params, bb, ctx);
    Value v = status_payload(Status::Succ, sel.operation);
    for (auto& [k, x] : result.items()) v[k] = std::move(x);
    return finish(a, Status::Succ, std::move(v));
  } catch (const Missing& e) {
    Value v = status_payload(Status::Miss, sel.operation);
    for (auto& [k, x] : e.detail.items()) v[k] = x;
    v["error"] = e.what();
    return finish(a, Status::Miss, std::move(v));
  } catch (const LookupError& e) {
    Value v = status_payload(Status::Miss, sel.operation);
    v["missing"] = e.what();
    return finish(a, Status::Miss, std::move(v));
  } catch (const std::exception& e) {
    Value v = status_payload(Status::Fail, sel.operation);
    v["error"] = e.what();
    return finish(a, Status::Fail, std::move(v));
  }
}

}  // namespace star::agents
