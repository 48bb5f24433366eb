#include "incmatch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "incmatch/errors.hpp"
#include "incmatch/executor.hpp"
#include "incmatch/fuzz.hpp"
#include "incmatch/inclusion.hpp"
#include "incmatch/oracle.hpp"
#include "incmatch/reducer.hpp"

namespace incmatch {

namespace {

struct RunConfig {
  std::string graph_path;
  std::string pattern_path;
  std::string mode = "count";
  bool occurrences = false;
  std::string reduction = "on";
  unsigned threads = 1;
  std::string stats_path;
  std::string output_path;
  std::uint64_t seed = 1;
  bool verify_shortcut = false;
  bool check_trail = false;
};

void write_stats(const std::string& path, const MatchResult& r) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write stats file " + path);
  const MatchStats& s = r.stats;
  f << "embedding_count=" << r.embedding_count << '\n';
  f << "occurrence_count=";
  if (r.occurrence_count) f << *r.occurrence_count;
  f << '\n';
  f << "adjacency_reads=" << s.adjacency_reads << '\n';
  f << "peak_tuples=" << s.peak_tuples << '\n';
  f << "wall_time_ms=" << s.wall_time_ms << '\n';
  f << "threads=" << s.threads << '\n';
  f << "adjacency_reads_removed=" << s.adjacency_reads_removed << '\n';
  f << "explore_calls=" << s.explore_calls << '\n';
  f << "leaves=" << s.leaf.leaves << '\n';
  f << "shortcut_leaves=" << s.leaf.shortcut_leaves << '\n';
  f << "shortcut_mismatches=" << s.leaf.shortcut_mismatches << '\n';
  f << "trail_failures=" << s.trail_failures << '\n';
  f << "tasks=" << s.tasks << '\n';
  f << "tasks_stolen=" << s.tasks_stolen << '\n';
}

void write_embeddings(std::ostream& out, const PatternGraph& pattern, const DataGraph& graph,
                      std::vector<std::vector<NodeId>> embeddings) {
  std::sort(embeddings.begin(), embeddings.end());
  for (const auto& tuple : embeddings) {
    for (VertexId v = 0; v < tuple.size(); ++v) {
      if (v) out << ' ';
      out << pattern.name(v) << '=' << graph.original_id(tuple[v]);
    }
    out << '\n';
  }
}

int cmd_match(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PatternGraph pattern = parse_pattern_file(cfg.pattern_path);
  const DataGraph graph = load_edge_list_file(cfg.graph_path);
  const InclusionClosure closure = compute_closure(pattern);
  const MatchPlan plan = reduce(pattern, closure, {cfg.reduction == "on"});

  RunOptions options;
  options.mode = cfg.mode == "enumerate" ? MatchMode::kEnumerate : MatchMode::kCount;
  options.threads = cfg.threads;
  options.with_occurrences = cfg.occurrences;
  options.verify_shortcut = cfg.verify_shortcut;
  options.check_trail = cfg.check_trail;
  const MatchResult result = run(pattern, plan, graph, options);

  out << "embeddings=" << result.embedding_count << '\n';
  if (cfg.occurrences) {
    if (result.occurrence_count) {
      out << "occurrences=" << *result.occurrence_count << '\n';
    } else {
      err << "warning: pattern too large for automorphism count, occurrences not reported\n";
    }
  }
  if (options.mode == MatchMode::kEnumerate) {
    if (cfg.output_path.empty()) {
      write_embeddings(out, pattern, graph, result.embeddings);
    } else {
      std::ofstream f(cfg.output_path);
      if (!f) throw UsageError("cannot write output file " + cfg.output_path);
      write_embeddings(f, pattern, graph, result.embeddings);
    }
  }
  if (!cfg.stats_path.empty()) write_stats(cfg.stats_path, result);
  return 0;
}

int cmd_plan(const std::string& pattern_path, const std::string& reduction, std::ostream& out) {
  const PatternGraph pattern = parse_pattern_file(pattern_path);
  const InclusionClosure closure = compute_closure(pattern);
  const MatchPlan plan = reduce(pattern, closure, {reduction == "on"});
  out << format_plan(pattern, closure, plan);
  return 0;
}

int cmd_oracle(const std::string& graph_path, const std::string& pattern_path, std::ostream& out) {
  const PatternGraph pattern = parse_pattern_file(pattern_path);
  const DataGraph graph = load_edge_list_file(graph_path);
  out << "oracle_embeddings=" << enumerate_bruteforce(graph, pattern).embedding_count << '\n';
  return 0;
}

int cmd_fuzz(const FuzzOptions& options, std::ostream& out) {
  const FuzzReport r = run_fuzz(options);
  out << "graphs=" << r.graphs << '\n';
  out << "patterns=" << r.patterns << '\n';
  out << "cases=" << r.cases << '\n';
  out << "count_mismatches=" << r.count_mismatches << '\n';
  out << "invalid_plans=" << r.invalid_plans << '\n';
  out << "removed_edge_reads=" << r.removed_edge_reads << '\n';
  out << "shortcut_checks=" << r.shortcut_checks << '\n';
  out << "shortcut_mismatches=" << r.shortcut_mismatches << '\n';
  out << "trail_failures=" << r.trail_failures << '\n';
  for (const auto& f : r.failures) out << "FAIL " << f << '\n';
  return r.ok() ? 0 : 4;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directed subgraph matching with constraint-inclusion reduction"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* match = app.add_subcommand("match", "Count or enumerate embeddings");
  match->add_option("--graph", cfg.graph_path, "Data graph edge list")->required();
  match->add_option("--pattern", cfg.pattern_path, "Pattern edge list")->required();
  match->add_option("--mode", cfg.mode)->check(CLI::IsMember({"count", "enumerate"}));
  match->add_flag("--occurrences", cfg.occurrences, "Also report embeddings / |Aut|");
  match->add_option("--reduction", cfg.reduction)->check(CLI::IsMember({"on", "off"}));
  match->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  match->add_option("--stats", cfg.stats_path, "Write key=value stats here");
  match->add_option("--output", cfg.output_path, "Embeddings file (enumerate mode)");
  match->add_flag("--verify-shortcut", cfg.verify_shortcut, "Shadow-enumerate product-shortcut leaves");
  match->add_flag("--check-trail", cfg.check_trail, "Checksum tables around every backtrack");

  std::string plan_pattern;
  std::string plan_reduction = "on";
  auto* plan = app.add_subcommand("plan", "Print the closure and matching plan");
  plan->add_option("pattern", plan_pattern)->required();
  plan->add_option("--reduction", plan_reduction)->check(CLI::IsMember({"on", "off"}));

  std::string oracle_graph;
  std::string oracle_pattern;
  auto* oracle = app.add_subcommand("oracle", "Brute-force embedding count");
  oracle->add_option("graph", oracle_graph)->required();
  oracle->add_option("pattern", oracle_pattern)->required();

  FuzzOptions fuzz_options;
  std::string fuzz_reduction = "on";
  auto* fuzz = app.add_subcommand("fuzz", "Engine vs oracle on random graphs");
  fuzz->add_option("--seed", fuzz_options.seed);
  fuzz->add_option("--seeds-per-config", fuzz_options.seeds_per_config)->check(CLI::PositiveNumber);
  fuzz->add_option("--random-patterns", fuzz_options.random_patterns);
  fuzz->add_option("--threads", fuzz_options.threads)->check(CLI::PositiveNumber);
  fuzz->add_option("--reduction", fuzz_reduction)->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*match) return cmd_match(cfg, out, err);
    if (*plan) return cmd_plan(plan_pattern, plan_reduction, out);
    if (*oracle) return cmd_oracle(oracle_graph, oracle_pattern, out);
    fuzz_options.reduction = fuzz_reduction == "on";
    return cmd_fuzz(fuzz_options, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const PlanError& e) {
    err << "plan error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace incmatch
