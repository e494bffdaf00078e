#include "star/harness/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "star/agents/menu.hpp"
#include "star/core/error.hpp"

namespace star::harness {

std::vector<Agent> RecoveryCandidateRule::for_agent(Agent failing) const {
  std::vector<Agent> out;
  if (candidates.empty()) {
    for (Agent a : kSpecialists)
      if (a != failing) out.push_back(a);
    return out;
  }
  for (Agent a : candidates)
    if (a != failing && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

namespace {

// Tries each candidate on the board as it stood right after the error.
std::vector<AugmentedTransition> augment(const ExecutionTrace& trace, const std::vector<Blackboard>& history,
                                         const agents::QueryProfile& profile, const QueryRecord& record,
                                         agents::AgentRuntime& runtime, const RecoveryCandidateRule& rule) {
  std::vector<AugmentedTransition> out;
  const agents::Query q = record.as_query();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto [a, s] = trace.steps[i];
    if (!status_is_error(s)) continue;
    for (Agent c : rule.for_agent(a)) {
      Blackboard bb = history[i];
      bool recovered = false;
      try {
        const auto r = runtime.execute(c, bb, q);
        if (r.status == Status::Succ) {
          for (const auto& d : r.deposits) bb.deposit(d);
          recovered = is_correct(runtime.fuse(bb, q, profile).answer, record);
        }
      } catch (const std::exception&) {
        recovered = false;
      }
      out.push_back({a, s, c, recovered});
    }
  }
  return out;
}

}  // namespace

TrainingRun run_training_pipeline(const std::vector<QueryRecord>& records, agents::AgentRuntime& runtime,
                                  const RoutingKernel& bootstrap, const PipelineConfig& cfg) {
  if (records.empty()) throw ContractError("training pipeline needs at least one record");
  std::vector<ExecutionTrace> traces;
  traces.reserve(records.size());
  for (const auto& rec : records) {
    auto run = executor::run_inference(rec.as_query(), bootstrap, runtime, cfg.inference);
    run.trace.correct = is_correct(run.answer, rec);
    if (cfg.training.enable_augmentation)
      run.trace.augmented = augment(run.trace, run.history, run.profile, rec, runtime, cfg.candidates);
    traces.push_back(std::move(run.trace));
  }
  auto counts = train_count_tensor(traces, bootstrap.taxonomy(), cfg.training);
  auto matrix = normalize(counts);
  RoutingKernel kernel(bootstrap.nominal(), matrix, cfg.training);
  return {std::move(traces), std::move(counts), std::move(matrix), std::move(kernel)};
}

// -- scripted simulation ---------------------------------------------------

const AgentScript* ScriptedBehavior::find(Agent a, const std::string& task_type) const {
  auto it = scripts.find({a, task_type});
  return it == scripts.end() ? nullptr : &it->second;
}

std::vector<std::string> ScriptedBehavior::task_types() const {
  std::set<std::string> types;
  for (const auto& [key, _] : scripts) types.insert(key.second);
  return {types.begin(), types.end()};
}

void ScriptedBehavior::validate() const {
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(fusion_accuracy)) throw ContractError("fusion accuracy must lie in [0, 1]");
  for (const auto& [key, s] : scripts) {
    if (!unit(s.succ) || !unit(s.fail) || !unit(s.block) || !unit(s.miss) || !unit(s.accuracy))
      throw ContractError("scripted probabilities must lie in [0, 1]");
    for (const auto& [st, acc] : s.accuracy_after)
      if (!status_is_error(st) || !unit(acc))
        throw ContractError("conditional accuracy needs an error status and a probability");
    if (std::fabs(s.succ + s.fail + s.block + s.miss - 1.0) > 1e-9)
      throw ContractError("scripted status distribution for " + std::string(name_of(key.first)) + "/" + key.second +
                          " does not sum to 1");
  }
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001B3ULL;
  return h;
}

constexpr std::uint64_t kStatusSalt = 1, kAccuracySalt = 2;

double accuracy_on(const AgentScript& s, Agent self, const Blackboard& bb) {
  if (s.accuracy_after.empty()) return s.accuracy;
  const auto& entries = bb.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (!is_specialist(it->producer) || it->producer == self) continue;
    const auto st = it->payload.is_object() && it->payload.contains("status") && it->payload["status"].is_string()
                        ? parse_status(it->payload["status"].get<std::string>())
                        : std::nullopt;
    if (st) {
      auto found = s.accuracy_after.find(*st);
      if (found != s.accuracy_after.end()) return found->second;
    }
    break;
  }
  return s.accuracy;
}

}  // namespace

double scripted_draw(std::uint64_t seed, std::string_view query_id, Agent a, std::uint64_t salt) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ fnv1a(query_id));
  h = splitmix(h ^ (static_cast<std::uint64_t>(index_of(a)) << 8) ^ salt);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

ScriptedRuntime::ScriptedRuntime(std::shared_ptr<const Taxonomy> taxonomy, ScriptedBehavior behavior)
    : taxonomy_(std::move(taxonomy)), behavior_(std::move(behavior)) {
  behavior_.validate();
}

agents::QueryProfile ScriptedRuntime::classify(const agents::Query& q) {
  agents::QueryProfile p;
  p.task_type = q.text;
  p.type = taxonomy_->resolve(q.text);
  p.benchmark = "scripted";
  return p;
}

agents::AgentResult ScriptedRuntime::execute(Agent a, const Blackboard& bb, const agents::Query& q) {
  agents::AgentResult r;
  const AgentScript* s = behavior_.find(a, q.text);
  Value payload = Value::object();
  if (s == nullptr || !is_specialist(a)) {
    r.status = Status::Miss;
  } else {
    const double u = scripted_draw(behavior_.seed, q.id, a, kStatusSalt);
    if (u < s->succ) r.status = Status::Succ;
    else if (u < s->succ + s->fail) r.status = Status::Fail;
    else if (u < s->succ + s->fail + s->block) r.status = Status::Block;
    else r.status = Status::Miss;
  }
  payload["status"] = name_of(r.status);
  switch (r.status) {
    case Status::Succ:
      payload["answer_correct"] = scripted_draw(behavior_.seed, q.id, a, kAccuracySalt) < accuracy_on(*s, a, bb);
      break;
    case Status::Fail: payload["error"] = "scripted malformed result"; break;
    case Status::Block: payload["missing"] = "upstream_result"; break;
    case Status::Miss: payload["missing"] = "applicable_operation"; break;
    case Status::Init: break;
  }
  r.deposits.push_back({a, std::string(agents::result_key(a)), std::move(payload)});
  return r;
}

agents::FusionOutput ScriptedRuntime::fuse(const Blackboard& bb, const agents::Query& q, const agents::QueryProfile&) {
  // The most recent successful specialist decides the answer.
  const auto& entries = bb.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (!is_specialist(it->producer) || !it->payload.contains("answer_correct")) continue;
    return {it->payload["answer_correct"].get<bool>() ? "1" : "0", false, "specialist"};
  }
  const bool ok = scripted_draw(behavior_.seed, q.id, Agent::Fusion, kAccuracySalt) < behavior_.fusion_accuracy;
  return {ok ? "1" : "0", true, "extractor"};
}

std::vector<QueryRecord> synthetic_queries(const ScriptedBehavior& behavior, std::size_t n, std::uint64_t seed) {
  const auto types = behavior.task_types();
  if (types.empty()) throw ContractError("behavior scripts no task types");
  std::vector<QueryRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    QueryRecord r;
    r.id = "sim-" + std::to_string(seed) + "-" + std::to_string(i);
    r.task_type = types[i % types.size()];
    r.query = r.task_type;
    r.gold = "1";
    r.benchmark = "scripted";
    out.push_back(std::move(r));
  }
  return out;
}

RecoveryBreakdown simulate_recovery(const ScriptedBehavior& behavior, const RoutingKernel& kernel,
                                    std::size_t n_queries, std::uint64_t seed, const executor::InferenceConfig& cfg) {
  ScriptedRuntime runtime(kernel.taxonomy_ptr(), behavior);
  RecoveryBreakdown out;
  for (const auto& rec : synthetic_queries(behavior, n_queries, seed)) {
    const auto run = executor::run_inference(rec.as_query(), kernel, runtime, cfg);
    const bool ok = is_correct(run.answer, rec);
    RecoveryRow* row = &out.no_failure;
    for (const auto& st : run.trace.steps) {
      if (st.status == Status::Fail) row = &out.fail;
      else if (st.status == Status::Block) row = &out.block;
      else if (st.status == Status::Miss) row = &out.miss;
      else continue;
      break;
    }
    ++row->n;
    row->correct += ok ? 1 : 0;
  }
  return out;
}

// -- alpha sweep -----------------------------------------------------------

SuccessorOracle majority_oracle(std::span<const ExecutionTrace> traces) {
  std::map<OracleKey, std::array<std::size_t, kAgentCount>> votes;
  for (const auto& tr : traces) {
    if (!tr.correct) continue;
    for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i) {
      const auto& st = tr.steps[i];
      if (!status_is_nominal(st.status)) continue;
      ++votes[{st.agent, st.status, tr.task_type}][index_of(tr.steps[i + 1].agent)];
    }
  }
  SuccessorOracle out;
  for (const auto& [key, v] : votes) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kAgentCount; ++i)
      if (v[i] > v[best]) best = i;
    out[key] = kAllAgents[best];
  }
  return out;
}

std::vector<AlphaPoint> alpha_sweep(std::span<const ExecutionTrace> traces, const std::vector<double>& grid,
                                    const SuccessorOracle& oracle, std::shared_ptr<const Taxonomy> taxonomy,
                                    TrainingConfig base) {
  // Error triples visited anywhere in the corpus.
  std::set<std::tuple<Agent, Status, std::uint32_t>> error_triples;
  for (const auto& tr : traces) {
    const TaskType t = taxonomy->resolve(tr.task_type);
    for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i)
      if (status_is_error(tr.steps[i].status))
        error_triples.insert({tr.steps[i].agent, status_slot(tr.steps[i].status, base.ablation), t.index});
  }

  std::vector<AlphaPoint> out;
  for (double alpha : grid) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractError("alpha grid must lie in [0, 1]");
    TrainingConfig cfg = base;
    cfg.alpha = alpha;
    const auto m = normalize(train_count_tensor(traces, *taxonomy, cfg));
    AlphaPoint p;
    p.alpha = alpha;
    double prec = 0.0;
    for (const auto& [key, best] : oracle) {
      const TaskType t = taxonomy->resolve(key.task_type);
      prec += m.at(key.agent, status_slot(key.status, cfg.ablation), t, best);
    }
    p.precision = oracle.empty() ? 0.0 : prec / static_cast<double>(oracle.size());
    std::size_t covered = 0;
    for (const auto& [a, s, t] : error_triples) covered += m.row_empty(a, s, TaskType{t}) ? 0 : 1;
    p.coverage = error_triples.empty() ? 0.0 : static_cast<double>(covered) / static_cast<double>(error_triples.size());
    out.push_back(p);
  }
  return out;
}

}  // namespace star::harness
