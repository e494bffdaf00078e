#include <doctest.h>

#include <cmath>
#include <random>

#include "star/core/error.hpp"
#include "star/routing/kernel.hpp"
#include "star/routing/matrix_io.hpp"
#include "star/routing/training.hpp"

using namespace star;

namespace {

std::shared_ptr<const Taxonomy> tax() { return Taxonomy::builtin(); }

ExecutionTrace make_trace(std::string type, std::vector<TraceStep> steps, bool correct) {
  ExecutionTrace tr;
  tr.query_id = "q";
  tr.task_type = std::move(type);
  tr.steps = std::move(steps);
  tr.correct = correct;
  return tr;
}

constexpr TraceStep H{Agent::Head, Status::Succ};
constexpr TraceStep F{Agent::Fusion, Status::Succ};

// Random trace: HEAD, then 0..5 specialist steps with random statuses, then FUSION.
ExecutionTrace random_trace(std::mt19937_64& rng, const Taxonomy& tx) {
  std::vector<TraceStep> steps{H};
  const int n = static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i)
    steps.push_back({kSpecialists[rng() % 6], kAllStatuses[1 + rng() % 4]});
  steps.push_back(F);
  auto tr = make_trace(tx.names()[rng() % 4], steps, rng() % 2 == 0);
  return tr;
}

}  // namespace

TEST_CASE("trace weight") {
  CHECK(trace_weight(true, 0.3) == 1.0);
  CHECK(trace_weight(false, 0.3) == doctest::Approx(0.3));
  CHECK(trace_weight(false, 0.0) == 0.0);
  CHECK_THROWS_AS(trace_weight(false, 1.5), ContractError);
  CHECK_THROWS_AS(trace_weight(false, -0.1), ContractError);
}

TEST_CASE("alpha zero ablation overrides alpha") {
  TrainingConfig cfg;
  cfg.alpha = 0.7;
  cfg.ablation = Ablation::AlphaZero;
  CHECK(cfg.effective_alpha() == 0.0);
  for (Ablation a : {Ablation::Full, Ablation::System1Only, Ablation::System2Only, Ablation::NoStatus,
                     Ablation::AlphaZero, Ablation::Random})
    CHECK(parse_ablation(name_of(a)) == a);
}

TEST_CASE("count tensor hand counts") {
  const auto& tx = *tax();
  const auto t = tx.require("STBENCH_ADMIN_REGION");
  TrainingConfig cfg;
  cfg.alpha = 0.3;

  std::vector<ExecutionTrace> ok{make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Succ}, F}, true)};
  auto c = train_count_tensor(ok, tx, cfg);
  CHECK(c.at(Agent::Head, Status::Succ, t, Agent::Spatial) == 1.0);
  CHECK(c.at(Agent::Spatial, Status::Succ, t, Agent::Fusion) == 1.0);
  double total = 0;
  for (double x : c.data()) total += x;
  CHECK(total == 2.0);

  ok[0].correct = false;
  c = train_count_tensor(ok, tx, cfg);
  CHECK(c.at(Agent::Head, Status::Succ, t, Agent::Spatial) == doctest::Approx(0.3));
  CHECK(c.at(Agent::Spatial, Status::Succ, t, Agent::Fusion) == doctest::Approx(0.3));

  std::vector<ExecutionTrace> miss{make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, F}, false)};
  cfg.alpha = 0.0;
  c = train_count_tensor(miss, tx, cfg);
  for (Agent to : kAllAgents) CHECK(c.at(Agent::Spatial, Status::Miss, t, to) == 0.0);

  CHECK(train_count_tensor(std::vector<ExecutionTrace>{}, tx, cfg).data().size() == TensorShape(36).size());
}

TEST_CASE("augmented recoveries count with weight one only when recovered") {
  const auto& tx = *tax();
  const auto t = tx.require("STBENCH_ADMIN_REGION");
  auto tr = make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, F}, false);
  tr.augmented = {{Agent::Spatial, Status::Miss, Agent::Semantic, true},
                  {Agent::Spatial, Status::Miss, Agent::Temporal, false}};
  std::vector<ExecutionTrace> v{tr};
  TrainingConfig cfg;
  cfg.alpha = 0.3;
  auto c = train_count_tensor(v, tx, cfg);
  CHECK(c.at(Agent::Spatial, Status::Miss, t, Agent::Semantic) == 1.0);
  CHECK(c.at(Agent::Spatial, Status::Miss, t, Agent::Temporal) == 0.0);
  CHECK(c.at(Agent::Spatial, Status::Miss, t, Agent::Fusion) == doctest::Approx(0.3));
  cfg.enable_augmentation = false;
  c = train_count_tensor(v, tx, cfg);
  CHECK(c.at(Agent::Spatial, Status::Miss, t, Agent::Semantic) == 0.0);
}

TEST_CASE("unregistered task types count under OPEN") {
  const auto& tx = *tax();
  std::vector<ExecutionTrace> v{make_trace("MYSTERY", {H, {Agent::Spatial, Status::Fail}, F}, true)};
  auto c = train_count_tensor(v, tx, TrainingConfig{});
  CHECK(c.at(Agent::Spatial, Status::Fail, tx.open(), Agent::Fusion) == 1.0);
}

TEST_CASE("no-status ablation merges error statuses") {
  const auto& tx = *tax();
  const auto t = tx.require("STBENCH_ADMIN_REGION");
  std::vector<ExecutionTrace> v{
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, {Agent::Semantic, Status::Succ}, F}, true),
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Block}, F}, true)};
  TrainingConfig cfg;
  cfg.ablation = Ablation::NoStatus;
  auto c = train_count_tensor(v, tx, cfg);
  CHECK(c.at(Agent::Spatial, Status::Fail, t, Agent::Semantic) == 1.0);
  CHECK(c.at(Agent::Spatial, Status::Fail, t, Agent::Fusion) == 1.0);
  CHECK(c.at(Agent::Spatial, Status::Miss, t, Agent::Semantic) == 0.0);
  CHECK(status_slot(Status::Succ, Ablation::NoStatus) == Status::Succ);
  CHECK(status_slot(Status::Block, Ablation::NoStatus) == Status::Fail);
  CHECK(status_slot(Status::Block, Ablation::Full) == Status::Block);
}

TEST_CASE("normalize hand example") {
  const auto& tx = *tax();
  const TaskType t{0};
  CountTensor c(TensorShape(tx.slot_count()));
  c.add(Agent::Spatial, Status::Miss, t, Agent::Temporal, 2.0);
  c.add(Agent::Spatial, Status::Miss, t, Agent::Semantic, 0.3);
  auto m = normalize(c);
  // independent: exact rational division
  CHECK(m.at(Agent::Spatial, Status::Miss, t, Agent::Temporal) == doctest::Approx(2.0 / 2.3).epsilon(1e-12));
  CHECK(m.at(Agent::Spatial, Status::Miss, t, Agent::Semantic) == doctest::Approx(0.3 / 2.3).epsilon(1e-12));
  CHECK(m.at(Agent::Spatial, Status::Miss, t, Agent::Temporal) == doctest::Approx(0.8696).epsilon(1e-4));
  CHECK(m.row_empty(Agent::Spatial, Status::Fail, t));
  CHECK(support(m, Agent::Spatial, Status::Fail, t).empty());
  for (Status s : kAllStatuses) {
    CHECK(m.at(Agent::Fusion, s, t, Agent::Fusion) == 1.0);
    CHECK(support(m, Agent::Fusion, s, t) == AgentSet{Agent::Fusion});
  }
}

TEST_CASE("fusion rows are forced absorbing even with observed mass") {
  CountTensor c(TensorShape(tax()->slot_count()));
  c.add(Agent::Fusion, Status::Succ, TaskType{3}, Agent::Spatial, 5.0);
  auto m = normalize(c);
  CHECK(m.at(Agent::Fusion, Status::Succ, TaskType{3}, Agent::Spatial) == 0.0);
  CHECK(m.at(Agent::Fusion, Status::Succ, TaskType{3}, Agent::Fusion) == 1.0);
}

TEST_CASE("row stochasticity over random tensors") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    CountTensor c(TensorShape(3));
    const int fills = 1 + static_cast<int>(rng() % 40);
    for (int k = 0; k < fills; ++k)
      c.add(kAllAgents[rng() % 8], kAllStatuses[rng() % 5], TaskType{static_cast<std::uint32_t>(rng() % 3)},
            kAllAgents[rng() % 8], (rng() % 5 == 0) ? 1e-300 : u(rng));
    auto m = normalize(c);
    for (std::size_t r = 0; r < m.shape().row_count(); ++r) {
      if (m.row_empty(r)) continue;
      double s = 0;
      for (double x : m.row(r)) {
        CHECK(x >= 0.0);
        s += x;
      }
      CHECK(std::abs(s - 1.0) <= 1e-9);
      // support inclusion in the count support (FUSION rows excepted)
      if (r >= index_of(Agent::Fusion) * kStatusCount * 3) continue;
      for (std::size_t i = 0; i < kAgentCount; ++i)
        if (m.row(r)[i] > 0) CHECK(c.row(r)[i] > 0);
    }
  }
}

TEST_CASE("kernel routing") {
  auto table = NominalRouteTable::builtin(tax());
  const auto& tx = table.taxonomy();
  const auto st = tx.require("STARK_SPATIOTEMPORAL_RELATIONSHIP");
  auto k = nominal_only_kernel(table);

  CHECK(k.in_omega1(Agent::Spatial, Status::Succ, st));
  CHECK_FALSE(k.in_omega1(Agent::Spatial, Status::Miss, st));
  CHECK_FALSE(k.in_omega1(Agent::Navigation, Status::Succ, st));
  CHECK(k.route(Agent::Spatial, Status::Succ, st, Ablation::Full) == Distribution::delta(Agent::Temporal));
  CHECK(k.route(Agent::Spatial, Status::Fail, st, Ablation::Full) == Distribution::delta(Agent::Fusion));
  CHECK(k.route(Agent::Head, Status::Init, st, Ablation::Full) == Distribution::delta(Agent::Spatial));
  for (Status s : kAllStatuses)
    for (Ablation ab : {Ablation::Full, Ablation::Random, Ablation::System2Only})
      CHECK(k.route(Agent::Fusion, s, st, ab) == Distribution::delta(Agent::Fusion));

  auto rnd = k.route(Agent::Spatial, Status::Succ, st, Ablation::Random);
  CHECK(rnd[Agent::Head] == 0.0);
  CHECK(rnd[Agent::Fusion] == doctest::Approx(1.0 / 7));
  CHECK(rnd.total() == doctest::Approx(1.0));

  CHECK_THROWS_AS(k.route(Agent::Spatial, Status::Succ, TaskType{static_cast<std::uint32_t>(tx.slot_count())},
                          Ablation::Full),
                  ContractError);
  // OPEN has no expert route: every state falls to System 2 and its safety net.
  CHECK(k.route(Agent::Head, Status::Succ, tx.open(), Ablation::Full) == Distribution::delta(Agent::Fusion));
}

TEST_CASE("Case D recovery mass concentrates on fusion") {
  auto table = NominalRouteTable::builtin(tax());
  std::vector<ExecutionTrace> v{
      make_trace("STARK_LANDMARK_DIRECTION", {H, {Agent::Spatial, Status::Miss}, F}, true),
      make_trace("STARK_LANDMARK_DIRECTION", {H, {Agent::Spatial, Status::Miss}, {Agent::Semantic, Status::Succ}, F},
                 false)};
  TrainingConfig cfg;
  auto k = train_kernel(v, table, cfg);
  const auto t = table.taxonomy().require("STARK_LANDMARK_DIRECTION");
  auto d = k.route(Agent::Spatial, Status::Miss, t, Ablation::Full);
  CHECK(d.argmax() == Agent::Fusion);
  CHECK(d[Agent::Fusion] == doctest::Approx(1.0 / 1.3));
}

TEST_CASE("ablations switch the kernel's systems") {
  auto table = NominalRouteTable::builtin(tax());
  const auto t = table.taxonomy().require("STBENCH_ADMIN_REGION");
  std::vector<ExecutionTrace> v{
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Semantic, Status::Succ}, F}, true),
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, {Agent::Semantic, Status::Succ}, F}, true)};
  auto k = train_kernel(v, table, TrainingConfig{});
  // System 1 says HEAD -> SPATIAL; the matrix row says SEMANTIC / SPATIAL split.
  CHECK(k.route(Agent::Head, Status::Succ, t, Ablation::Full) == Distribution::delta(Agent::Spatial));
  auto s2 = k.route(Agent::Head, Status::Succ, t, Ablation::System2Only);
  CHECK(s2[Agent::Semantic] == doctest::Approx(0.5));
  CHECK(k.route(Agent::Spatial, Status::Miss, t, Ablation::Full) == Distribution::delta(Agent::Semantic));
  CHECK(k.route(Agent::Spatial, Status::Miss, t, Ablation::System1Only) == Distribution::delta(Agent::Fusion));
  // NO_STATUS looks up the merged slot, which this (full) matrix never filled.
  CHECK(k.route(Agent::Spatial, Status::Miss, t, Ablation::NoStatus) == Distribution::delta(Agent::Fusion));
}

TEST_CASE("expert routes are acyclic and short") {
  auto table = NominalRouteTable::builtin(tax());
  const auto& tx = table.taxonomy();
  for (std::uint32_t i = 0; i < tx.size(); ++i) {
    const TaskType t{i};
    REQUIRE(table.path(t) != nullptr);
    AgentSet seen;
    Agent cur = Agent::Head;
    int len = 1;
    seen.insert(cur);
    while (cur != Agent::Fusion) {
      auto nx = table.successor(t, cur);
      REQUIRE(nx.has_value());
      CHECK_FALSE(seen.contains(*nx));
      seen.insert(*nx);
      cur = *nx;
      ++len;
    }
    CHECK(len <= 8);
  }
  NominalRouteTable custom(tax());
  CHECK_THROWS_AS(custom.set_path(TaskType{0}, {Agent::Head, Agent::Spatial, Agent::Spatial, Agent::Fusion}),
                  ValidationError);
  CHECK_THROWS_AS(custom.set_path(TaskType{0}, {Agent::Spatial, Agent::Fusion}), ValidationError);
}

TEST_CASE("support dominance over generated corpora") {
  const auto& tx = *tax();
  std::mt19937_64 rng(21);
  for (int corpus = 0; corpus < 200; ++corpus) {
    std::vector<ExecutionTrace> v;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) v.push_back(random_trace(rng, tx));
    TrainingConfig zero, pos;
    zero.alpha = 0.0;
    pos.alpha = 0.05 + 0.9 * static_cast<double>(rng() % 100) / 100.0;
    auto m0 = normalize(train_count_tensor(v, tx, zero));
    auto ma = normalize(train_count_tensor(v, tx, pos));
    for (Agent a : kAllAgents)
      for (Status s : kErrorStatuses)
        for (std::uint32_t ti = 0; ti < tx.slot_count(); ++ti) {
          auto s0 = support(m0, a, s, TaskType{ti});
          auto sa = support(ma, a, s, TaskType{ti});
          CHECK((s0 - sa).empty());
        }
  }
}

TEST_CASE("support grows strictly when a failed trace adds a novel successor") {
  const auto& tx = *tax();
  const auto t = tx.require("STBENCH_ADMIN_REGION");
  std::vector<ExecutionTrace> v{
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, {Agent::Semantic, Status::Succ}, F}, true),
      make_trace("STBENCH_ADMIN_REGION", {H, {Agent::Spatial, Status::Miss}, {Agent::Temporal, Status::Succ}, F}, false)};
  TrainingConfig zero, pos;
  zero.alpha = 0.0;
  pos.alpha = 0.3;
  auto s0 = support(normalize(train_count_tensor(v, tx, zero)), Agent::Spatial, Status::Miss, t);
  auto sa = support(normalize(train_count_tensor(v, tx, pos)), Agent::Spatial, Status::Miss, t);
  CHECK(s0.size() == 1);
  CHECK(sa.size() == 2);
  CHECK(sa.contains(Agent::Temporal));
}

TEST_CASE("coverage is non-decreasing in alpha") {
  const auto& tx = *tax();
  std::mt19937_64 rng(5);
  std::vector<ExecutionTrace> v;
  for (int i = 0; i < 60; ++i) v.push_back(random_trace(rng, tx));
  double prev = -1;
  for (double alpha : {0.0, 0.1, 0.3, 0.5, 1.0}) {
    TrainingConfig cfg;
    cfg.alpha = alpha;
    auto m = normalize(train_count_tensor(v, tx, cfg));
    int filled = 0;
    for (Agent a : kSpecialists)
      for (Status s : kErrorStatuses)
        for (std::uint32_t ti = 0; ti < tx.slot_count(); ++ti) filled += m.row_empty(a, s, TaskType{ti}) ? 0 : 1;
    CHECK(filled >= prev);
    prev = filled;
  }
}

TEST_CASE("matrix save and load round trip") {
  auto table = NominalRouteTable::builtin(tax());
  std::mt19937_64 rng(9);
  std::vector<ExecutionTrace> v;
  for (int i = 0; i < 40; ++i) v.push_back(random_trace(rng, table.taxonomy()));
  TrainingConfig cfg;
  cfg.alpha = 0.3;
  auto k = train_kernel(v, table, cfg);
  auto text = save_matrix(k);
  auto back = load_matrix(text);
  CHECK(back.recovery() == k.recovery());
  CHECK(back.nominal() == k.nominal());
  CHECK(back.trained_with().alpha == 0.3);
  CHECK(save_matrix(back) == text);

  CHECK_THROWS_AS(load_matrix(text.substr(0, text.size() / 2)), ParseError);
  CHECK_THROWS_AS(load_matrix(""), ParseError);
  CHECK_THROWS_AS(load_matrix("[1,2,3]"), ParseError);
}

TEST_CASE("matrix from another taxonomy routes foreign types through the safety net") {
  auto small = std::make_shared<const Taxonomy>(std::vector<std::string>{"ALPHA_TASK", "BETA_TASK"});
  NominalRouteTable table(small);
  table.set_path(TaskType{0}, {Agent::Head, Agent::Spatial, Agent::Fusion});
  std::vector<ExecutionTrace> v{make_trace("ALPHA_TASK", {H, {Agent::Spatial, Status::Fail}, {Agent::Temporal, Status::Succ}, F}, true)};
  auto k = load_matrix(save_matrix(train_kernel(v, table, TrainingConfig{})));
  const auto foreign = k.taxonomy().resolve("STBENCH_ADMIN_REGION");
  CHECK(k.taxonomy().is_open(foreign));
  CHECK(k.route(Agent::Spatial, Status::Fail, foreign, Ablation::Full) == Distribution::delta(Agent::Fusion));
  CHECK(k.route(Agent::Spatial, Status::Fail, TaskType{0}, Ablation::Full) == Distribution::delta(Agent::Temporal));
}
