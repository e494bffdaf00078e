#include "star/routing/matrix_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "star/core/error.hpp"
#include "star/core/value.hpp"

namespace star {

namespace {

constexpr std::string_view kFormat = "star-routing-matrix";
constexpr int kVersion = 1;

[[noreturn]] void fail(const std::string& what, std::size_t where) { throw ParseError("matrix: " + what, where); }

const Value& field(const Value& obj, const char* key, std::size_t where) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'", where);
  return obj.at(key);
}

Agent agent_field(const Value& v, std::size_t where) {
  if (!v.is_string()) fail("agent must be a string", where);
  auto a = parse_agent(v.get<std::string>());
  if (!a) fail("unknown agent '" + v.get<std::string>() + "'", where);
  return *a;
}

}  // namespace

std::string save_matrix(const RoutingKernel& kernel) {
  const Taxonomy& tax = kernel.taxonomy();
  const RecoveryMatrix& m = kernel.recovery();
  const TrainingConfig& cfg = kernel.trained_with();

  Value doc = Value::object();
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["pool"] = Value::array();
  for (Agent a : kAllAgents) doc["pool"].push_back(name_of(a));
  doc["statuses"] = Value::array();
  for (Status s : kAllStatuses) doc["statuses"].push_back(name_of(s));
  doc["taxonomy"] = tax.names();
  doc["alpha"] = cfg.alpha;
  doc["augmentation"] = cfg.enable_augmentation;
  doc["ablation"] = name_of(cfg.ablation);

  Value nominal = Value::object();
  for (std::uint32_t ti = 0; ti < tax.size(); ++ti) {
    const auto* path = kernel.nominal().path(TaskType{ti});
    if (path == nullptr) continue;
    Value p = Value::array();
    for (Agent a : *path) p.push_back(name_of(a));
    nominal[std::string(tax.name(TaskType{ti}))] = std::move(p);
  }
  doc["nominal"] = std::move(nominal);

  Value rows = Value::array();
  for (Agent a : kAllAgents)
    for (Status s : kAllStatuses)
      for (std::uint32_t ti = 0; ti < tax.slot_count(); ++ti) {
        const TaskType t{ti};
        if (m.row_empty(a, s, t)) continue;
        Value to = Value::object();
        auto row = m.row(a, s, t);
        for (Agent b : kAllAgents)
          if (row[index_of(b)] > 0.0) to[std::string(name_of(b))] = row[index_of(b)];
        rows.push_back({{"from", name_of(a)}, {"status", name_of(s)}, {"type", tax.name(t)}, {"to", std::move(to)}});
      }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

RoutingKernel load_matrix(std::string_view text) {
  Value doc;
  try {
    doc = Value::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("syntax error: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) fail("document is not an object", 0);
  const Value& format = field(doc, "format", 0);
  if (!format.is_string() || format.get<std::string>() != kFormat) fail("not a routing matrix file", 0);
  const Value& version = field(doc, "version", 0);
  if (!version.is_number_integer() || version.get<int>() != kVersion) fail("unsupported version", 0);

  const Value& pool = field(doc, "pool", 0);
  if (!pool.is_array() || pool.size() != kAgentCount) fail("agent pool does not match", 0);
  for (std::size_t i = 0; i < kAgentCount; ++i)
    if (!pool[i].is_string() || pool[i].get<std::string>() != name_of(kAllAgents[i])) fail("agent pool does not match", 0);
  const Value& statuses = field(doc, "statuses", 0);
  if (!statuses.is_array() || statuses.size() != kStatusCount) fail("status list does not match", 0);
  for (std::size_t i = 0; i < kStatusCount; ++i)
    if (!statuses[i].is_string() || statuses[i].get<std::string>() != name_of(kAllStatuses[i]))
      fail("status list does not match", 0);

  std::shared_ptr<const Taxonomy> tax;
  try {
    tax = std::make_shared<const Taxonomy>(field(doc, "taxonomy", 0).get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad taxonomy: ") + e.what(), 0);
  } catch (const Error& e) {
    fail(std::string("bad taxonomy: ") + e.what(), 0);
  }

  TrainingConfig cfg;
  const Value& alpha = field(doc, "alpha", 0);
  if (!alpha.is_number()) fail("alpha must be a number", 0);
  cfg.alpha = alpha.get<double>();
  const Value& aug = field(doc, "augmentation", 0);
  if (!aug.is_boolean()) fail("augmentation must be a boolean", 0);
  cfg.enable_augmentation = aug.get<bool>();
  if (doc.contains("ablation")) {
    const Value& ab = doc.at("ablation");
    auto parsed = ab.is_string() ? parse_ablation(ab.get<std::string>()) : std::nullopt;
    if (!parsed) fail("unknown ablation", 0);
    cfg.ablation = *parsed;
  }

  NominalRouteTable nominal(tax);
  const Value& routes = field(doc, "nominal", 0);
  if (!routes.is_object()) fail("nominal must be an object", 0);
  for (const auto& [type, path] : routes.items()) {
    auto t = tax->find(type);
    if (!t) fail("nominal route for unregistered type '" + type + "'", 0);
    if (!path.is_array()) fail("nominal route must be a list", 0);
    std::vector<Agent> agents;
    for (const auto& a : path) agents.push_back(agent_field(a, 0));
    try {
      nominal.set_path(*t, std::move(agents));
    } catch (const Error& e) {
      fail(e.what(), 0);
    }
  }

  RecoveryMatrix m{TensorShape(tax->slot_count())};
  const Value& rows = field(doc, "rows", 0);
  if (!rows.is_array()) fail("rows must be a list", 0);
  std::vector<std::uint8_t> seen(m.shape().row_count(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t where = i + 1;  // row number
    const Value& r = rows[i];
    const Agent from = agent_field(field(r, "from", where), where);
    const Value& sv = field(r, "status", where);
    auto s = sv.is_string() ? parse_status(sv.get<std::string>()) : std::nullopt;
    if (!s) fail("row has unknown status", where);
    const Value& tv = field(r, "type", where);
    if (!tv.is_string()) fail("row type must be a string", where);
    const std::string tname = tv.get<std::string>();
    const TaskType t = tname == kOpenTaskType ? tax->open() : [&] {
      auto found = tax->find(tname);
      if (!found) fail("row type '" + tname + "' is not in the taxonomy", where);
      return *found;
    }();
    const std::size_t idx = m.shape().row(from, *s, t);
    if (seen[idx]) fail("duplicate row", where);
    seen[idx] = 1;

    const Value& to = field(r, "to", where);
    if (!to.is_object()) fail("row 'to' must be an object", where);
    std::array<double, kAgentCount> probs{};
    double total = 0.0;
    for (const auto& [name, p] : to.items()) {
      auto a = parse_agent(name);
      if (!a) fail("unknown successor '" + name + "'", where);
      if (!p.is_number()) fail("probability must be a number", where);
      const double v = p.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) fail("probability out of range", where);
      probs[index_of(*a)] = v;
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) fail("row does not sum to 1", where);
    if (from == Agent::Fusion && probs[index_of(Agent::Fusion)] != 1.0) fail("FUSION row is not absorbing", where);
    m.set_row(idx, probs);
  }
  // Absorbing FUSION holds whether or not the file spells it out.
  std::array<double, kAgentCount> delta{};
  delta[index_of(Agent::Fusion)] = 1.0;
  for (Status s : kAllStatuses)
    for (std::uint32_t ti = 0; ti < tax->slot_count(); ++ti) m.set_row(Agent::Fusion, s, TaskType{ti}, delta);

  return RoutingKernel(std::move(nominal), std::move(m), cfg);
}

void save_matrix_file(const RoutingKernel& kernel, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << save_matrix(kernel);
  if (!out) throw Error("failed writing " + path.string());
}

RoutingKernel load_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_matrix(ss.str());
}

}  // namespace star
