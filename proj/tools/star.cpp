// star: train, route, simulate, sweep, eval and inspect from the shell.
// Inputs and outputs are line-delimited JSON. Exit 0 on success, 2 on
// invalid input, 1 on anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "star/agents/agent.hpp"
#include "star/agents/extractors.hpp"
#include "star/agents/text.hpp"
#include "star/core/error.hpp"
#include "star/executor/executor.hpp"
#include "star/harness/eval.hpp"
#include "star/harness/pipeline.hpp"
#include "star/routing/matrix_io.hpp"
#include "star/routing/training.hpp"

namespace {

using star::Value;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw star::ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<star::ExecutionTrace> read_trace_file(const std::string& path) {
  std::istringstream in(slurp(path));
  return star::read_traces(in);
}

star::Ablation ablation_arg(const std::string& name) {
  auto a = star::parse_ablation(name);
  if (!a) throw star::ValidationError("unknown ablation '" + name + "'");
  return *a;
}

std::uint64_t seed_arg(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("STAR_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw star::ValidationError("STAR_SEED must be an unsigned integer");
    return v;
  }
  return 0;
}

// {"seed": s, "fusion_accuracy": f, "scripts": [{"agent", "task_type",
//  "succ", "fail", "block", "miss", "accuracy", "accuracy_after": {"MISS": p}}]}
star::harness::ScriptedBehavior read_behavior(const std::string& path) {
  const Value v = Value::parse(slurp(path));
  star::harness::ScriptedBehavior b;
  b.seed = v.value("seed", std::uint64_t{0});
  b.fusion_accuracy = v.value("fusion_accuracy", 0.5);
  for (const auto& s : v.at("scripts")) {
    auto a = star::parse_agent(s.at("agent").get<std::string>());
    if (!a) throw star::ValidationError("unknown agent in behavior file");
    star::harness::AgentScript sc;
    sc.succ = s.value("succ", 0.0);
    sc.fail = s.value("fail", 0.0);
    sc.block = s.value("block", 0.0);
    sc.miss = s.value("miss", 0.0);
    sc.accuracy = s.value("accuracy", 1.0);
    if (s.contains("accuracy_after")) {
      for (const auto& [name, p] : s.at("accuracy_after").items()) {
        auto st = star::parse_status(name);
        if (!st) throw star::ValidationError("unknown status '" + name + "' in behavior file");
        sc.accuracy_after[*st] = p.get<double>();
      }
    }
    b.set(*a, s.at("task_type").get<std::string>(), sc);
  }
  b.validate();
  return b;
}

struct Options {
  // train
  std::string traces, out;
  double alpha = 0.3;
  bool no_augmentation = false;
  std::string ablation = "FULL";
  // route / inspect
  std::string matrix, query = "-", trace_out, extractor = "scripted", replay, geocoder;
  double tau = 0.4;
  std::size_t max_steps = 10, parallelism = 4;
  std::string from, status, type;
  // simulate
  std::string behavior;
  std::size_t n = 1000, train_n = 0;
  std::optional<std::uint64_t> seed;
  // sweep
  std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  // eval
  std::string dataset, predictions;
};

int cmd_train(const Options& o) {
  star::TrainingConfig cfg;
  cfg.alpha = o.alpha;
  cfg.enable_augmentation = !o.no_augmentation;
  cfg.ablation = ablation_arg(o.ablation);
  const auto traces = read_trace_file(o.traces);
  const auto tax = star::Taxonomy::builtin();
  auto kernel = star::train_kernel(traces, star::NominalRouteTable::builtin(tax), cfg);
  star::save_matrix_file(kernel, o.out);
  std::cerr << "trained on " << traces.size() << " traces -> " << o.out << "\n";
  return 0;
}

Value distribution_json(const star::Distribution& d) {
  Value v = Value::object();
  for (auto a : star::kAllAgents)
    if (d[a] > 0.0) v[std::string(star::name_of(a))] = d[a];
  return v;
}

int cmd_inspect(const Options& o) {
  const auto kernel = star::load_matrix_file(o.matrix);
  auto a = star::parse_agent(o.from);
  auto s = star::parse_status(o.status);
  if (!a) throw star::ValidationError("unknown agent '" + o.from + "'");
  if (!s) throw star::ValidationError("unknown status '" + o.status + "'");
  const auto t = kernel.taxonomy().resolve(o.type);
  const auto d = kernel.route(*a, *s, t, ablation_arg(o.ablation));
  Value out = {{"from", o.from},
               {"status", o.status},
               {"type", kernel.taxonomy().name(t)},
               {"system", kernel.in_omega1(*a, *s, t) ? 1 : 2},
               {"distribution", distribution_json(d)}};
  std::cout << out.dump() << "\n";
  return 0;
}

std::unique_ptr<star::agents::Extractor> make_extractor(const Options& o) {
  if (o.extractor == "scripted") return std::make_unique<star::agents::ScriptedExtractor>();
  if (o.extractor == "replay") {
    if (o.replay.empty()) throw star::ValidationError("--extractor replay needs --replay FILE");
    return std::make_unique<star::agents::ReplayExtractor>(star::agents::ReplayExtractor::from_file(o.replay));
  }
  if (o.extractor == "remote") {
    auto cfg = star::agents::RemoteConfig::from_env();
    if (!cfg) throw star::ValidationError("--extractor remote needs STAR_LLM_BASE_URL");
    return std::make_unique<star::agents::RemoteExtractor>(*cfg);
  }
  throw star::ValidationError("unknown extractor '" + o.extractor + "'");
}

int cmd_route(const Options& o) {
  const auto kernel = star::load_matrix_file(o.matrix);
  auto extractor = make_extractor(o);
  std::optional<star::agents::FixtureGeocoder> geo;
  star::agents::ToolContext ctx;
  if (!o.geocoder.empty()) {
    geo = star::agents::FixtureGeocoder::from_file(o.geocoder);
    ctx.geocoder = &*geo;
  }
  star::agents::ToolAgents agents(kernel.taxonomy_ptr(), *extractor, ctx);
  star::executor::InferenceConfig cfg;
  cfg.tau = o.tau;
  cfg.max_steps = o.max_steps;
  cfg.parallelism = o.parallelism;
  cfg.ablation = ablation_arg(o.ablation);
  cfg.seed = seed_arg(o.seed);

  const auto data = star::harness::parse_dataset(slurp(o.query));
  for (const auto& d : data.diagnostics) std::cerr << "line " << d.line << ": " << d.message << "\n";
  std::vector<star::ExecutionTrace> traces;
  for (const auto& rec : data.records) {
    auto run = star::executor::run_inference(rec.as_query(), kernel, agents, cfg);
    run.trace.correct = star::harness::is_correct(run.answer, rec);
    Value line = {{"id", rec.id}, {"answer", run.answer}, {"correct", run.trace.correct}};
    Value steps = Value::array();
    for (const auto& s : run.trace.steps)
      steps.push_back(Value::array({std::string(star::name_of(s.agent)), std::string(star::name_of(s.status))}));
    line["route"] = std::move(steps);
    std::cout << line.dump() << "\n";
    traces.push_back(std::move(run.trace));
  }
  if (!o.trace_out.empty()) {
    std::ofstream out(o.trace_out);
    if (!out) throw star::ValidationError("cannot write " + o.trace_out);
    star::write_traces(out, traces);
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  auto behavior = read_behavior(o.behavior);
  const auto seed = seed_arg(o.seed);
  const auto tax = star::Taxonomy::builtin();
  star::executor::InferenceConfig cfg;
  cfg.tau = o.tau;
  cfg.max_steps = o.max_steps;
  cfg.ablation = ablation_arg(o.ablation);
  cfg.seed = seed;

  std::optional<star::RoutingKernel> kernel;
  if (!o.matrix.empty()) {
    kernel = star::load_matrix_file(o.matrix);
  } else {
    // Train on a disjoint synthetic split first.
    const auto bootstrap = star::nominal_only_kernel(star::NominalRouteTable::builtin(tax));
    star::harness::ScriptedRuntime runtime(tax, behavior);
    star::harness::PipelineConfig pc;
    pc.training.alpha = o.alpha;
    pc.training.enable_augmentation = !o.no_augmentation;
    pc.inference = cfg;
    const auto train = star::harness::synthetic_queries(behavior, o.train_n ? o.train_n : o.n, seed + 1);
    kernel = star::harness::run_training_pipeline(train, runtime, bootstrap, pc).kernel;
  }
  const auto b = star::harness::simulate_recovery(behavior, *kernel, o.n, seed, cfg);
  auto row = [](const star::harness::RecoveryRow& r) { return Value{{"n", r.n}, {"correct", r.correct}, {"em", r.em()}}; };
  Value out = {{"no_failure", row(b.no_failure)}, {"miss", row(b.miss)}, {"block", row(b.block)}, {"fail", row(b.fail)}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto traces = read_trace_file(o.traces);
  const auto oracle = star::harness::majority_oracle(traces);
  star::TrainingConfig base;
  base.enable_augmentation = !o.no_augmentation;
  base.ablation = ablation_arg(o.ablation);
  for (const auto& p : star::harness::alpha_sweep(traces, o.grid, oracle, star::Taxonomy::builtin(), base))
    std::cout << Value{{"alpha", p.alpha}, {"precision", p.precision}, {"coverage", p.coverage}}.dump() << "\n";
  return 0;
}

int cmd_eval(const Options& o) {
  const auto data = star::harness::load_dataset(o.dataset);
  for (const auto& d : data.diagnostics) std::cerr << "dataset line " << d.line << ": " << d.message << "\n";
  std::map<std::string, std::string> predicted;
  std::istringstream in(slurp(o.predictions));
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Value v = Value::parse(line, nullptr, false);
    if (v.is_discarded() || !v.contains("id") || !v.contains("answer"))
      throw star::ParseError("prediction needs id and answer", no);
    predicted[v["id"].get<std::string>()] = v["answer"].get<std::string>();
  }
  std::size_t k = 0, n = 0, missing = 0;
  std::vector<double> rp, rg;
  for (const auto& r : data.records) {
    auto it = predicted.find(r.id);
    if (it == predicted.end()) {
      ++missing;
      continue;
    }
    if (r.mode == star::harness::AnswerMode::Regression) {
      const auto p = star::agents::parse_numbers(it->second), g = star::agents::parse_numbers(r.gold);
      if (!p.empty() && !g.empty()) {
        rp.push_back(p.front());
        rg.push_back(g.front());
      }
      continue;
    }
    ++n;
    k += star::harness::evaluate_em(it->second, r.gold, r.mode) ? 1 : 0;
  }
  Value out = {{"n", n}, {"correct", k}, {"missing_predictions", missing}};
  if (n > 0) {
    const auto ci = star::harness::wilson_ci(k, n);
    out["em"] = static_cast<double>(k) / static_cast<double>(n);
    out["wilson_center"] = ci.center;
    out["wilson_half_width"] = ci.half_width;
  }
  if (!rp.empty()) {
    out["rmse"] = star::harness::evaluate_regression(rp, rg, star::harness::RegressionMetric::Rmse);
    out["mae"] = star::harness::evaluate_regression(rp, rg, star::harness::RegressionMetric::Mae);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Status-aware multi-agent routing: training, inference and evaluation"};
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "Fit a routing matrix from execution traces");
  train->add_option("--traces", o.traces, "Trace file (JSONL)")->required();
  train->add_option("--alpha", o.alpha, "Weight of unsuccessful traces")->check(CLI::Range(0.0, 1.0));
  train->add_option("--out", o.out, "Matrix file to write")->required();
  train->add_flag("--no-augmentation", o.no_augmentation, "Ignore augmented recovery transitions");
  train->add_option("--ablation", o.ablation, "FULL, SYSTEM1_ONLY, SYSTEM2_ONLY, NO_STATUS, ALPHA_ZERO, RANDOM");

  auto* inspect = app.add_subcommand("inspect", "Print the routing distribution of one state");
  inspect->add_option("--matrix", o.matrix)->required();
  inspect->add_option("--from", o.from)->required();
  inspect->add_option("--status", o.status)->required();
  inspect->add_option("--type", o.type)->required();
  inspect->add_option("--ablation", o.ablation);

  auto* route = app.add_subcommand("route", "Answer queries end to end");
  route->add_option("--matrix", o.matrix)->required();
  route->add_option("--query", o.query, "Query records (JSONL) or - for stdin");
  route->add_option("--tau", o.tau)->check(CLI::Range(0.0, 1.0));
  route->add_option("--max-steps", o.max_steps);
  route->add_option("--parallelism", o.parallelism);
  route->add_option("--ablation", o.ablation);
  route->add_option("--trace-out", o.trace_out);
  route->add_option("--extractor", o.extractor, "scripted, replay or remote");
  route->add_option("--replay", o.replay, "Replay fixture (JSONL)");
  route->add_option("--geocoder", o.geocoder, "Geocoder fixture (JSONL)");
  route->add_option("--seed", o.seed);

  auto* simulate = app.add_subcommand("simulate", "Recovery breakdown under scripted agent behavior");
  simulate->add_option("--behavior", o.behavior)->required();
  simulate->add_option("--matrix", o.matrix, "Use this matrix instead of training one");
  simulate->add_option("--n", o.n);
  simulate->add_option("--train-n", o.train_n);
  simulate->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0));
  simulate->add_flag("--no-augmentation", o.no_augmentation);
  simulate->add_option("--tau", o.tau)->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--max-steps", o.max_steps);
  simulate->add_option("--ablation", o.ablation);
  simulate->add_option("--seed", o.seed);

  auto* sweep = app.add_subcommand("sweep", "Precision and coverage across alpha");
  sweep->add_option("--traces", o.traces)->required();
  sweep->add_option("--grid", o.grid)->delimiter(',');
  sweep->add_flag("--no-augmentation", o.no_augmentation);
  sweep->add_option("--ablation", o.ablation);

  auto* eval = app.add_subcommand("eval", "Exact match with Wilson intervals");
  eval->add_option("--dataset", o.dataset)->required();
  eval->add_option("--predictions", o.predictions)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*train) return cmd_train(o);
    if (*inspect) return cmd_inspect(o);
    if (*route) return cmd_route(o);
    if (*simulate) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*eval) return cmd_eval(o);
  } catch (const star::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const star::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const star::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
