#include "incmatch/fuzz.hpp"

#include "incmatch/executor.hpp"
#include "incmatch/generators.hpp"
#include "incmatch/inclusion.hpp"
#include "incmatch/oracle.hpp"
#include "incmatch/reducer.hpp"

namespace incmatch {

namespace {
constexpr std::size_t kMaxReportedFailures = 10;
}

FuzzReport run_fuzz(const FuzzOptions& options) {
  FuzzReport report;
  const auto patterns = fuzz_patterns(options.random_patterns, options.seed);
  const auto configs = fuzz_graph_configs(options.seeds_per_config, options.seed + 1);
  report.graphs = configs.size();
  report.patterns = patterns.size();

  auto fail = [&report](std::string message) {
    if (report.failures.size() < kMaxReportedFailures) report.failures.push_back(std::move(message));
  };

  std::vector<MatchPlan> plans;
  for (const auto& np : patterns) {
    const InclusionClosure closure = compute_closure(np.pattern);
    plans.push_back(reduce(np.pattern, closure, {options.reduction}));
    const auto problems = validate_plan(np.pattern, closure, plans.back());
    if (!problems.empty()) {
      ++report.invalid_plans;
      fail(np.name + ": " + problems.front());
    }
  }

  RunOptions run_options;
  run_options.threads = options.threads;
  run_options.verify_shortcut = true;
  run_options.check_trail = true;
  for (const auto& cfg : configs) {
    const DataGraph graph = random_digraph(cfg.nodes, cfg.p, cfg.seed);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const auto& np = patterns[i];
      const MatchResult got = run(np.pattern, plans[i], graph, run_options);
      const OracleResult want = enumerate_bruteforce(graph, np.pattern);
      ++report.cases;
      report.total_embeddings += want.embedding_count;
      report.removed_edge_reads += got.stats.adjacency_reads_removed;
      report.shortcut_checks += got.stats.leaf.shortcut_checks;
      report.shortcut_mismatches += got.stats.leaf.shortcut_mismatches;
      report.trail_failures += got.stats.trail_failures;
      if (got.embedding_count != want.embedding_count) {
        ++report.count_mismatches;
        fail(np.name + " n=" + std::to_string(cfg.nodes) + " p=" + std::to_string(cfg.p) +
             " seed=" + std::to_string(cfg.seed) + ": engine " + std::to_string(got.embedding_count) + " oracle " +
             std::to_string(want.embedding_count));
      }
    }
  }
  return report;
}

}  // namespace incmatch
