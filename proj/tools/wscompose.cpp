#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wsc/bundle.hpp"
#include "wsc/errors.hpp"
#include "wsc/generator.hpp"
#include "wsc/oracle.hpp"
#include "wsc/pipeline.hpp"
#include "wsc/replay.hpp"

namespace {

using nlohmann::ordered_json;

// Exit codes: 0 ok, 2 unsatisfiable request, 3 parse/validation error,
// 4 limit exceeded, 1 anything else.
enum ExitCode { kOk = 0, kInternal = 1, kUnsatisfiable = 2, kBadInput = 3, kLimit = 4 };

struct InputArgs {
  std::string bundle;
  std::string taxonomy, repo, request;
  std::string format = "json";

  void attach(CLI::App* cmd) {
    cmd->add_option("--bundle", bundle, "single canonical JSON bundle");
    cmd->add_option("--taxonomy", taxonomy, "taxonomy document");
    cmd->add_option("--repo", repo, "service repository document");
    cmd->add_option("--request", request, "request document");
    cmd->add_option("--format", format, "input format for part files")
        ->check(CLI::IsMember({"json", "wsc08"}));
  }

  wsc::ProblemBundle load() const {
    if (!bundle.empty()) return wsc::load_bundle(bundle);
    if (taxonomy.empty() || repo.empty() || request.empty())
      throw wsc::ValidationError(
          "provide either --bundle or all of --taxonomy/--repo/--request");
    return wsc::load_bundle_parts(taxonomy, repo, request,
                                  wsc::bundle_format_from_string(format));
  }
};

struct SolveArgs {
  std::string order = "len";
  bool alg4_literal = false;
  std::uint32_t threads = 1;
  bool no_prune = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--order", order, "item scan order inside each knapsack step")
        ->check(CLI::IsMember({"len", "id", "input"}));
    cmd->add_flag("--alg4-literal", alg4_literal,
                  "cost items as fresh services plus one");
    cmd->add_option("--threads", threads, "workers per layer (default 1)");
    cmd->add_flag("--no-prune", no_prune, "skip the backward graph pruning");
  }

  wsc::RunOptions run_options() const {
    wsc::RunOptions opts;
    opts.graph.prune = !no_prune;
    opts.solver.order = wsc::item_order_from_string(order);
    opts.solver.alg4_literal = alg4_literal;
    opts.solver.threads = threads;
    return opts;
  }
};

void emit(const ordered_json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw wsc::ParseError("cannot write '" + out_path + "'");
    out << text;
  }
  std::cout << text;
}

ordered_json compose_doc(const wsc::ProblemBundle& bundle, const SolveArgs& solve_args,
                         bool with_timings, bool with_steps) {
  const wsc::RunOptions opts = solve_args.run_options();
  const wsc::RunOutcome run = wsc::run_pipeline(bundle, opts);
  const auto& g = run.graph;
  const auto& sol = run.solution;

  ordered_json doc;
  if (!bundle.meta.name.empty()) doc["name"] = bundle.meta.name;
  doc["order"] = wsc::to_string(sol.order);
  doc["alg4_literal"] = opts.solver.alg4_literal;
  doc["threads"] = opts.solver.threads;
  doc["graph"] = {{"g_size", run.metrics.g_size},
                  {"layers", g.layers().size()},
                  {"nodes", g.node_count()}};

  std::vector<std::string> members;
  ordered_json plan = ordered_json::array();
  std::vector<std::vector<wsc::IoView>> stages;
  for (const auto& stage : sol.plan) {
    ordered_json stage_names = ordered_json::array();
    std::vector<wsc::IoView> stage_views;
    for (wsc::NodeId n : stage) {
      stage_names.push_back(g.node(n).id);
      members.push_back(g.node(n).id);
      stage_views.push_back({g.node(n).inputs, g.node(n).outputs});
    }
    plan.push_back(std::move(stage_names));
    stages.push_back(std::move(stage_views));
  }
  doc["composition"] = {{"c_services", run.metrics.c_services},
                        {"len_with_dummies", run.metrics.len_with_dummies},
                        {"services", members}};
  doc["plan"] = std::move(plan);
  doc["replay_ok"] = wsc::staged_replay(bundle.taxonomy, stages,
                                        bundle.request.provided,
                                        bundle.request.wanted);
  if (with_steps) {
    ordered_json steps = ordered_json::array();
    for (const auto& st : sol.steps)
      steps.push_back({{"service", g.node(st.service).id},
                       {"items", st.items},
                       {"v_cap", st.v_cap},
                       {"relaxations", st.relaxations}});
    doc["steps"] = std::move(steps);
  }
  if (with_timings)
    doc["timings"] = {{"g_time_ms", run.metrics.g_time_ms},
                      {"c_time_ms", run.metrics.c_time_ms},
                      {"tot_time_ms", run.metrics.tot_time_ms}};

  std::fprintf(stderr, "graph: %zu services in %zu layers; composition: %u services\n",
               run.metrics.g_size, g.layers().size(), run.metrics.c_services);
  return doc;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

int dispatch(ordered_json& error_doc, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
  ordered_json error_doc;
  try {
    return dispatch(error_doc, argc, argv);
  } catch (const wsc::UnsatisfiableRequest& e) {
    error_doc["error"] = {{"type", "unsatisfiable_request"},
                          {"message", e.what()},
                          {"uncovered", e.uncovered()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUnsatisfiable;
  } catch (const wsc::Infeasible& e) {
    error_doc["error"] = {{"type", "infeasible"}, {"message", e.what()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUnsatisfiable;
  } catch (const wsc::ParseError& e) {
    error_doc["error"] = {{"type", "parse_error"}, {"message", e.what()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const wsc::ValidationError& e) {
    error_doc["error"] = {{"type", "validation_error"}, {"message", e.what()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const wsc::InputWidthExceeded& e) {
    error_doc["error"] = {{"type", "input_width_exceeded"},
                          {"message", e.what()},
                          {"width", e.width()},
                          {"limit", e.limit()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kLimit;
  } catch (const wsc::InstanceTooLarge& e) {
    error_doc["error"] = {{"type", "instance_too_large"}, {"message", e.what()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kLimit;
  } catch (const std::exception& e) {
    error_doc["error"] = {{"type", "internal_error"}, {"message", e.what()}};
    std::cout << error_doc.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
}

namespace {

int dispatch(ordered_json&, int argc, char** argv) {
  CLI::App app{"Minimal-cardinality semantic service composition"};
  app.require_subcommand(1);

  // compose
  auto* compose = app.add_subcommand("compose", "build the dependency graph and solve");
  InputArgs compose_in;
  SolveArgs compose_solve;
  compose_in.attach(compose);
  compose_solve.attach(compose);
  bool compose_no_timings = false, compose_stats = false;
  std::string compose_out;
  compose->add_flag("--no-timings", compose_no_timings,
                    "omit wall-clock fields for byte-stable output");
  compose->add_flag("--stats", compose_stats, "include per-step solver statistics");
  compose->add_option("--out", compose_out, "also write the document to a file");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive minimum for a small instance");
  InputArgs oracle_in;
  oracle_in.attach(oracle);
  std::uint32_t oracle_limit = wsc::kDefaultOracleLimit;
  std::string oracle_out;
  oracle->add_option("--limit", oracle_limit, "max services the oracle will enumerate");
  oracle->add_option("--out", oracle_out, "also write the document to a file");

  // gen
  auto* gen = app.add_subcommand("gen", "write a seeded synthetic bundle");
  std::uint64_t gen_seed = 1;
  wsc::GenParams gen_params;
  bool gen_unsolvable = false, gen_no_planted = false;
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--services", gen_params.services, "service count");
  gen->add_option("--concepts", gen_params.concepts, "concept count");
  gen->add_option("--depth", gen_params.depth, "planted chain length");
  gen->add_option("--provided", gen_params.provided, "request provided count");
  gen->add_option("--wanted", gen_params.wanted, "request wanted count");
  gen->add_option("--min-inputs", gen_params.min_inputs, "min inputs per service");
  gen->add_option("--max-inputs", gen_params.max_inputs, "max inputs per service");
  gen->add_option("--min-outputs", gen_params.min_outputs, "min outputs per service");
  gen->add_option("--max-outputs", gen_params.max_outputs, "max outputs per service");
  gen->add_option("--parent-prob", gen_params.parent_prob,
                  "chance a concept gets a parent");
  gen->add_flag("--unsolvable", gen_unsolvable, "skip the planted chain");
  gen->add_flag("--no-planted", gen_no_planted, "do not record the chain in metadata");
  gen->add_option("--out", gen_out, "also write the bundle to a file");

  // compare
  auto* compare = app.add_subcommand(
      "compare", "solver vs oracle vs greedy over generated instances");
  SolveArgs compare_solve;
  compare_solve.attach(compare);
  std::uint64_t compare_seed = 1;
  std::uint32_t compare_instances = 50;
  wsc::GenParams compare_params;
  compare_params.services = 10;
  std::uint32_t compare_limit = wsc::kDefaultOracleLimit;
  std::string compare_out;
  compare->add_option("--seed", compare_seed, "base seed");
  compare->add_option("--instances", compare_instances, "instance count");
  compare->add_option("--services", compare_params.services, "services per instance");
  compare->add_option("--concepts", compare_params.concepts, "concepts per instance");
  compare->add_option("--depth", compare_params.depth, "planted chain length");
  compare->add_option("--limit", compare_limit, "oracle enumeration limit");
  compare->add_option("--out", compare_out, "also write the document to a file");

  // bench
  auto* bench = app.add_subcommand("bench", "repeat-run timing over bundles");
  SolveArgs bench_solve;
  bench_solve.attach(bench);
  std::vector<std::string> bench_bundles;
  std::vector<std::string> bench_parts;
  std::string bench_format = "json";
  std::uint32_t bench_runs = 5, bench_warmups = 2;
  std::string bench_out;
  bench->add_option("--bundle", bench_bundles, "bundle files (repeatable)");
  bench->add_option("--parts", bench_parts,
                    "taxonomy,repo,request triple (repeatable)");
  bench->add_option("--format", bench_format, "format for --parts triples")
      ->check(CLI::IsMember({"json", "wsc08"}));
  bench->add_option("--runs", bench_runs, "timed runs per dataset (>= 1)");
  bench->add_option("--warmups", bench_warmups, "untimed warm-up runs");
  bench->add_option("--out", bench_out, "also write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (compose->parsed()) {
    const wsc::ProblemBundle bundle = compose_in.load();
    emit(compose_doc(bundle, compose_solve, !compose_no_timings, compose_stats),
         compose_out);
    return kOk;
  }

  if (oracle->parsed()) {
    const wsc::ProblemBundle bundle = oracle_in.load();
    const wsc::OracleResult result =
        wsc::oracle_min(bundle.services, bundle.request, bundle.taxonomy, oracle_limit);
    ordered_json doc;
    doc["optimal_len"] = result.optimal_len;
    ordered_json witness = ordered_json::array();
    for (std::uint32_t idx : result.witness) witness.push_back(bundle.services[idx].id);
    doc["witness"] = std::move(witness);
    doc["explored"] = result.explored;
    emit(doc, oracle_out);
    return kOk;
  }

  if (gen->parsed()) {
    gen_params.solvable = !gen_unsolvable;
    gen_params.record_planted = !gen_no_planted;
    const wsc::ProblemBundle bundle = wsc::generate(gen_seed, gen_params);
    emit(wsc::bundle_to_json(bundle), gen_out);
    return kOk;
  }

  if (compare->parsed()) {
    const wsc::RunOptions opts = compare_solve.run_options();
    std::uint32_t matches = 0, replay_failures = 0, below_oracle = 0;
    std::uint32_t greedy_wins = 0;
    double sum_solver = 0, sum_oracle = 0, sum_greedy = 0;
    std::uint32_t max_gap = 0;
    for (std::uint32_t i = 0; i < compare_instances; ++i) {
      const wsc::ProblemBundle bundle = wsc::generate(compare_seed + i, compare_params);
      const wsc::RunOutcome run = wsc::run_pipeline(bundle, opts);
      const wsc::OracleResult best =
          wsc::oracle_min(bundle.services, bundle.request, bundle.taxonomy, compare_limit);
      const auto greedy =
          wsc::greedy_baseline(bundle.services, bundle.request, bundle.taxonomy);

      std::vector<wsc::IoView> views;
      for (const auto& stage : run.solution.plan)
        for (wsc::NodeId n : stage)
          views.push_back({run.graph.node(n).inputs, run.graph.node(n).outputs});
      if (!wsc::closure_replay(bundle.taxonomy, views, bundle.request.provided,
                               bundle.request.wanted))
        ++replay_failures;

      const std::uint32_t solver_len = run.metrics.c_services;
      if (solver_len == best.optimal_len) ++matches;
      if (solver_len < best.optimal_len) ++below_oracle;
      if (greedy.size() < solver_len) ++greedy_wins;
      max_gap = std::max(max_gap, solver_len - std::min(solver_len, best.optimal_len));
      sum_solver += solver_len;
      sum_oracle += best.optimal_len;
      sum_greedy += static_cast<double>(greedy.size());
    }
    ordered_json doc;
    doc["instances"] = compare_instances;
    doc["seed"] = compare_seed;
    doc["order"] = compare_solve.order;
    doc["optimal_matches"] = matches;
    doc["opt_rate"] = compare_instances ? double(matches) / compare_instances : 1.0;
    doc["replay_failures"] = replay_failures;
    doc["solver_below_oracle"] = below_oracle;
    doc["max_gap"] = max_gap;
    doc["greedy_wins"] = greedy_wins;
    doc["mean_solver_len"] = compare_instances ? sum_solver / compare_instances : 0.0;
    doc["mean_oracle_len"] = compare_instances ? sum_oracle / compare_instances : 0.0;
    doc["mean_greedy_len"] = compare_instances ? sum_greedy / compare_instances : 0.0;
    emit(doc, compare_out);
    return kOk;
  }

  if (bench->parsed()) {
    if (bench_runs == 0) throw wsc::ValidationError("--runs must be at least 1");
    struct Entry {
      std::string name;
      wsc::ProblemBundle bundle;
    };
    std::vector<Entry> entries;
    for (const auto& path : bench_bundles) {
      Entry e{path, wsc::load_bundle(path)};
      if (!e.bundle.meta.name.empty()) e.name = e.bundle.meta.name;
      entries.push_back(std::move(e));
    }
    for (const auto& triple : bench_parts) {
      std::vector<std::string> parts;
      std::size_t start = 0;
      for (std::size_t at = triple.find(','); at != std::string::npos;
           at = triple.find(',', start)) {
        parts.push_back(triple.substr(start, at - start));
        start = at + 1;
      }
      parts.push_back(triple.substr(start));
      if (parts.size() != 3)
        throw wsc::ValidationError("--parts expects taxonomy,repo,request");
      entries.push_back({parts[2],
                         wsc::load_bundle_parts(parts[0], parts[1], parts[2],
                                                wsc::bundle_format_from_string(bench_format))});
    }
    if (entries.empty())
      throw wsc::ValidationError("bench needs --bundle or --parts inputs");

    const wsc::RunOptions opts = bench_solve.run_options();
    ordered_json results = ordered_json::array();
    for (const Entry& e : entries) {
      for (std::uint32_t w = 0; w < bench_warmups; ++w) wsc::run_pipeline(e.bundle, opts);
      std::vector<double> g_times, c_times;
      wsc::RunMetrics last{};
      for (std::uint32_t r = 0; r < bench_runs; ++r) {
        const wsc::RunOutcome run = wsc::run_pipeline(e.bundle, opts);
        g_times.push_back(run.metrics.g_time_ms);
        c_times.push_back(run.metrics.c_time_ms);
        last = run.metrics;
      }
      const double g_med = median(g_times), c_med = median(c_times);
      results.push_back({{"name", e.name},
                         {"g_size", last.g_size},
                         {"c_services", last.c_services},
                         {"len_with_dummies", last.len_with_dummies},
                         {"g_time_ms", g_med},
                         {"c_time_ms", c_med},
                         {"tot_time_ms", g_med + c_med}});
      std::fprintf(stderr, "%s: g_size=%zu c_services=%u c_time=%.2fms\n",
                   e.name.c_str(), last.g_size, last.c_services, c_med);
    }
    ordered_json doc;
    doc["protocol"] = {{"runs", bench_runs},
                       {"warmups", bench_warmups},
                       {"statistic", "median"},
                       {"order", bench_solve.order},
                       {"threads", bench_solve.threads}};
    doc["results"] = std::move(results);
    emit(doc, bench_out);
    return kOk;
  }

  return kOk;
}

}  // namespace
