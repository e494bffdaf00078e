#include "star/executor/executor.hpp"

#include <algorithm>
#include <future>
#include <random>

#include "star/agents/menu.hpp"
#include "star/core/error.hpp"

namespace star::executor {

void InferenceConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ContractError("tau must lie in (0, 1]");
  if (max_steps < 2) throw ContractError("max_steps must allow HEAD and FUSION");
  if (parallelism == 0) throw ContractError("parallelism must be positive");
}

AgentSet candidate_set(const Distribution& dist, double tau, AgentSet excluded) {
  AgentSet out;
  for (Agent a : kAllAgents)
    if (a != Agent::Head && dist[a] >= tau && !excluded.contains(a)) out.insert(a);
  if (out.empty()) out.insert(Agent::Fusion);
  return out;
}

namespace {

int priority(Status s, PivotOrder order) {
  switch (s) {
    case Status::Block: return order == PivotOrder::BlockFirst ? 0 : 1;
    case Status::Miss: return order == PivotOrder::BlockFirst ? 1 : 0;
    case Status::Fail: return 2;
    case Status::Succ: return 3;
    case Status::Init: return 4;
  }
  return 5;
}

}  // namespace

std::pair<Agent, Status> pivot(const std::vector<std::pair<Agent, Status>>& results, PivotOrder order) {
  if (results.empty()) throw ContractError("pivot over no results");
  auto best = results.front();
  for (const auto& r : results) {
    const int pr = priority(r.second, order), pb = priority(best.second, order);
    if (pr < pb || (pr == pb && index_of(r.first) < index_of(best.first))) best = r;
  }
  return best;
}

std::vector<std::pair<Agent, agents::AgentResult>> scatter(AgentSet set, const Blackboard& bb, const agents::Query& q,
                                                           agents::AgentRuntime& runtime, std::size_t parallelism) {
  const auto members = set.members();
  std::vector<std::pair<Agent, agents::AgentResult>> out;
  out.reserve(members.size());
  auto run = [&](Agent a) {
    try {
      return runtime.execute(a, bb, q);
    } catch (const std::exception& e) {
      // A runtime that breaks the no-throw contract still yields a status.
      agents::AgentResult r;
      r.status = Status::Fail;
      r.deposits.push_back({a, std::string(agents::result_key(a)), {{"status", "FAIL"}, {"error", e.what()}}});
      return r;
    }
  };
  if (members.size() == 1 || parallelism == 1) {
    for (Agent a : members) out.emplace_back(a, run(a));
    return out;
  }
  for (std::size_t i = 0; i < members.size(); i += parallelism) {
    const std::size_t end = std::min(members.size(), i + parallelism);
    std::vector<std::future<agents::AgentResult>> batch;
    for (std::size_t j = i; j < end; ++j) batch.push_back(std::async(std::launch::async, run, members[j]));
    for (std::size_t j = i; j < end; ++j) out.emplace_back(members[j], batch[j - i].get());
  }
  return out;
}

namespace {

class Run {
 public:
  Run(const agents::Query& q, const RoutingKernel& kernel, agents::AgentRuntime& runtime, const InferenceConfig& cfg)
      : q_(q), kernel_(kernel), runtime_(runtime), cfg_(cfg), rng_(cfg.seed) {}

  InferenceResult operator()() {
    res_.trace.query_id = q_.id;
    head();
    AgentSet next = first_candidates();
    while (!next.contains(Agent::Fusion)) {
      const std::size_t room = cfg_.max_steps - 1 - res_.trace.steps.size();
      if (room == 0) {
        res_.budget_exhausted = true;
        break;
      }
      AgentSet batch;
      for (Agent a : next.members())
        if (batch.size() < room) batch.insert(a);
      next = step(batch);
    }
    fusion();
    res_.board = board_;
    return std::move(res_);
  }

 private:
  void record(Agent a, Status s) {
    res_.trace.steps.push_back({a, s});
    res_.history.push_back(board_);
  }

  void head() {
    try {
      res_.profile = runtime_.classify(q_);
    } catch (const std::exception&) {
      res_.profile = {};
      res_.profile.task_type = std::string(kOpenTaskType);
      res_.profile.type = kernel_.taxonomy().open();
    }
    res_.trace.task_type = res_.profile.task_type;
    board_.deposit({Agent::Head, std::string(agents::result_key(Agent::Head)), agents::to_json(res_.profile)});
    record(Agent::Head, Status::Succ);
    pivot_ = {Agent::Head, Status::Succ};
  }

  TaskType type() const {
    return res_.profile.composite() ? kernel_.taxonomy().open() : res_.profile.type;
  }

  AgentSet excluded() const { return cfg_.allow_reentry ? retired_ : (retired_ | ran_); }

  // Successors of one (agent, status) control state.
  AgentSet successors(Agent a, Status s) {
    const Distribution dist = kernel_.route(a, s, type(), cfg_.ablation);
    if (cfg_.ablation == Ablation::Random) {
      // Uniform mass never clears tau; draw one successor instead.
      std::vector<Agent> pool;
      for (Agent x : kAllAgents)
        if (dist[x] > 0.0 && !excluded().contains(x)) pool.push_back(x);
      if (pool.empty()) return {Agent::Fusion};
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      return {pool[pick(rng_)]};
    }
    return candidate_set(dist, cfg_.tau, excluded());
  }

  AgentSet first_candidates() {
    if (!res_.profile.composite()) return successors(Agent::Head, Status::Succ);
    AgentSet seeds;
    for (Agent a : res_.profile.sub_types) seeds.insert(a);
    seeds = seeds - excluded();
    return seeds.empty() ? AgentSet{Agent::Fusion} : seeds;
  }

  AgentSet step(AgentSet batch) {
    const auto results = scatter(batch, board_, q_, runtime_, cfg_.parallelism);
    std::vector<std::pair<Agent, Status>> statuses;
    for (const auto& [a, r] : results) {
      for (const auto& d : r.deposits) board_.deposit(d);
      record(a, r.status);
      statuses.emplace_back(a, r.status);
      ran_.insert(a);
      if (r.status == Status::Fail) retired_.insert(a);
    }

    if (res_.profile.composite()) {
      // Each lane continues on its own: done after SUCC, recovering otherwise.
      AgentSet next;
      for (const auto& [a, s] : statuses) {
        if (s == Status::Succ) continue;
        next = next | (successors(a, s) - AgentSet{Agent::Fusion});
      }
      return next.empty() ? AgentSet{Agent::Fusion} : next;
    }
    pivot_ = pivot(statuses, cfg_.pivot_order);
    return successors(pivot_.first, pivot_.second);
  }

  void fusion() {
    agents::FusionOutput out;
    try {
      out = runtime_.fuse(board_, q_, res_.profile);
    } catch (const std::exception&) {
      out = {};
    }
    if (out.answer.empty()) {
      out.answer = "<answer>unknown</answer>";
      out.source = "default";
    }
    res_.answer = out.answer;
    board_.deposit({Agent::Fusion, std::string(agents::result_key(Agent::Fusion)),
                    {{"status", "SUCC"}, {"answer", out.answer}, {"source", out.source}, {"used_extractor", out.used_extractor}}});
    record(Agent::Fusion, Status::Succ);
  }

  const agents::Query& q_;
  const RoutingKernel& kernel_;
  agents::AgentRuntime& runtime_;
  const InferenceConfig& cfg_;
  std::mt19937_64 rng_;
  InferenceResult res_;
  Blackboard board_;
  AgentSet retired_, ran_;
  std::pair<Agent, Status> pivot_{Agent::Head, Status::Init};
};

}  // namespace

InferenceResult run_inference(const agents::Query& q, const RoutingKernel& kernel, agents::AgentRuntime& runtime,
                              const InferenceConfig& cfg) {
  cfg.validate();
  return Run(q, kernel, runtime, cfg)();
}

}  // namespace star::executor
