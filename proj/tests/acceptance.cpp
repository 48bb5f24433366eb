// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "incmatch/executor.hpp"
#include "incmatch/fuzz.hpp"
#include "incmatch/generators.hpp"
#include "incmatch/oracle.hpp"
#include "incmatch/reducer.hpp"

using namespace incmatch;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kMinGraphs = 200;
constexpr std::size_t kMinRandomPatterns = 5;
constexpr double kMaxFuzzSeconds = 300.0;
constexpr std::size_t kMaxKeptP7a = 7;
constexpr std::size_t kDeterminismInstances = 20;
constexpr double kSpeedupTarget = 3.0;            // informational
constexpr std::uint64_t kSpeedupMinEmbeddings = 1'000'000;
constexpr std::size_t kMediumNodes = 10'000;
constexpr double kMediumP = 0.001;                 // about 1e5 arcs
constexpr double kReuseTarget = 1.5;               // informational
constexpr int kTimingRepeats = 7;
constexpr std::size_t kCycleGraphs = 50;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& detail) {
  std::printf("[INFO] %s\n", detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

FuzzReport fuzz_report;

void oracle_equivalence() {
  FuzzOptions options;
  options.seed = kSeed;
  options.seeds_per_config = 6;
  options.random_patterns = 6;
  const auto t0 = std::chrono::steady_clock::now();
  fuzz_report = run_fuzz(options);
  const double secs = seconds_since(t0);
  for (const auto& f : fuzz_report.failures) info("fuzz: " + f);
  const bool ok = fuzz_report.count_mismatches == 0 && fuzz_report.graphs >= kMinGraphs &&
                  fuzz_report.patterns >= 3 + kMinRandomPatterns && secs < kMaxFuzzSeconds;
  report(1, ok,
         "oracle equivalence: " + std::to_string(fuzz_report.cases) + " cases over " +
             std::to_string(fuzz_report.graphs) + " graphs x " + std::to_string(fuzz_report.patterns) +
             " patterns, mismatches=" + std::to_string(fuzz_report.count_mismatches) + ", " + fmt(secs) + "s");
}

void plan_validity() {
  std::vector<PatternGraph> corpus;
  for (const auto& np : fuzz_patterns(6, kSeed)) corpus.push_back(np.pattern);
  for (std::uint64_t s = 0; s < 500; ++s) corpus.push_back(random_connected_pattern(3 + s % 6, 0.4, kSeed + s));
  std::size_t bad = 0;
  for (const auto& p : corpus) {
    const InclusionClosure closure = compute_closure(p);
    const MatchPlan plan = reduce(p, closure);
    if (!validate_plan(p, closure, plan).empty() || plan.split.size() + plan.removed.size() != p.edge_count()) ++bad;
  }
  report(2, bad == 0, "plan validity: " + std::to_string(corpus.size()) + " patterns, invalid=" + std::to_string(bad));
}

void p7a_shape() {
  const PatternGraph p = parse_pattern(kPatternP7a);
  const MatchPlan plan = reduce(p, compute_closure(p));
  std::set<std::string> kept;
  std::set<std::string> removed;
  for (EdgeId e : plan.kept_edges()) kept.insert(p.edge_label(e));
  for (EdgeId e : plan.removed_edges()) removed.insert(p.edge_label(e));
  const std::set<std::string> want_kept{"(a,c)", "(c,d)", "(e,f)", "(f,g)", "(a,b)", "(b,e)", "(d,g)"};
  const std::set<std::string> want_removed{"(b,c)", "(f,c)", "(c,e)"};
  std::string order;
  for (const auto& s : plan.split) order += p.edge_label(s.edge);
  const bool ok = p.name(plan.start) == "c" && kept == want_kept && removed == want_removed &&
                  plan.split.size() <= kMaxKeptP7a;
  report(3, ok, "P7a shape: start=" + p.name(plan.start) + " kept=" + std::to_string(kept.size()) +
                    " removed=" + std::to_string(removed.size()) + " queue=" + order);
}

void irreducible() {
  const PatternGraph p3 = parse_pattern(kPatternP3);
  const PatternGraph p4 = parse_pattern(kPatternP4);
  const auto r3 = reduce(p3, compute_closure(p3)).removed.size();
  const auto r4 = reduce(p4, compute_closure(p4)).removed.size();
  report(4, r3 == 0 && r4 == 0, "irreducible cycles: P3 removed=" + std::to_string(r3) + " P4 removed=" + std::to_string(r4));
}

void thread_determinism() {
  const auto patterns = fuzz_patterns(6, kSeed);
  std::size_t instances = 0;
  std::size_t differing = 0;
  for (std::size_t i = 0; instances < kDeterminismInstances; ++i) {
    const auto& np = patterns[i % patterns.size()];
    const DataGraph g = random_digraph(18 + i % 7, 0.15 + 0.02 * (i % 10), kSeed + i);
    const MatchPlan plan = reduce(np.pattern, compute_closure(np.pattern));
    std::vector<std::uint64_t> counts;
    for (unsigned threads : {1u, 2u, 8u}) {
      RunOptions options;
      options.threads = threads;
      counts.push_back(run(np.pattern, plan, g, options).embedding_count);
    }
    if (counts[0] != counts[1] || counts[0] != counts[2]) ++differing;
    ++instances;
  }
  report(5, differing == 0,
         "thread determinism: " + std::to_string(instances) + " instances at 1/2/8 threads, differing=" +
             std::to_string(differing));

  const PatternGraph p = parse_pattern(kPatternP4);
  const DataGraph g = random_digraph(500, 0.07, kSeed);
  const MatchPlan plan = reduce(p, compute_closure(p));
  RunOptions one;
  RunOptions eight;
  eight.threads = 8;
  const MatchResult a = run(p, plan, g, one);
  const MatchResult b = run(p, plan, g, eight);
  const double speedup = a.stats.wall_time_ms / std::max(b.stats.wall_time_ms, 1e-9);
  info("speedup at 8 threads: " + fmt(speedup) + "x on " + std::to_string(a.embedding_count) + " embeddings (target " +
       fmt(kSpeedupTarget) + "x" + (a.embedding_count < kSpeedupMinEmbeddings ? ", instance below 1e6" : "") +
       ", hardware threads " + std::to_string(std::thread::hardware_concurrency()) + ")");
}

void reuse() {
  const PatternGraph p = parse_pattern(kPatternP7a);
  const InclusionClosure closure = compute_closure(p);
  const MatchPlan on = reduce(p, closure);
  const MatchPlan off = reduce(p, closure, {false});
  const DataGraph g = random_digraph(kMediumNodes, kMediumP, kSeed);

  double best_on = 1e300;
  double best_off = 1e300;
  std::uint64_t removed_reads = fuzz_report.removed_edge_reads;
  std::uint64_t count_on = 0;
  std::uint64_t count_off = 0;
  std::uint64_t reads_on = 0;
  std::uint64_t reads_off = 0;
  // Interleaved, best of kTimingRepeats each.
  for (int r = 0; r < kTimingRepeats; ++r) {
    const MatchResult a = run(p, on, g);
    const MatchResult b = run(p, off, g);
    removed_reads += a.stats.adjacency_reads_removed;
    best_on = std::min(best_on, a.stats.wall_time_ms);
    best_off = std::min(best_off, b.stats.wall_time_ms);
    count_on = a.embedding_count;
    count_off = b.embedding_count;
    reads_on = a.stats.adjacency_reads;
    reads_off = b.stats.adjacency_reads;
  }
  info("medium graph adjacency reads: on " + std::to_string(reads_on) + " off " + std::to_string(reads_off));
  const double ratio = best_off / std::max(best_on, 1e-9);
  const bool ok = removed_reads == 0 && count_on == count_off && best_on <= best_off;
  report(6, ok,
         "reuse: removed-edge adjacency reads=" + std::to_string(removed_reads) + ", medium graph " +
             std::to_string(g.arc_count()) + " arcs, on " + fmt(best_on) + "ms off " + fmt(best_off) + "ms (" +
             fmt(ratio) + "x, target " + fmt(kReuseTarget) + "x), embeddings " + std::to_string(count_on));
}

void shortcut_soundness() {
  const bool ok = fuzz_report.shortcut_mismatches == 0 && fuzz_report.shortcut_checks > 0 && fuzz_report.trail_failures == 0;
  report(7, ok,
         "shortcut soundness: " + std::to_string(fuzz_report.shortcut_checks) + " shadow-checked leaves, mismatches=" +
             std::to_string(fuzz_report.shortcut_mismatches));
}

void cycle_divisibility() {
  std::size_t bad = 0;
  std::size_t checks = 0;
  for (std::size_t i = 0; i < kCycleGraphs; ++i) {
    const DataGraph g = random_digraph(8 + i % 17, 0.1 + 0.3 * (i % 5) / 4.0, kSeed * 7 + i);
    for (std::size_t k = 3; k <= 5; ++k) {
      const PatternGraph c = cycle_pattern(k);
      const auto engine = match(c, g).embedding_count;
      const auto oracle = enumerate_bruteforce(g, c).embedding_count;
      if (engine % k != 0 || oracle % k != 0 || engine != oracle) ++bad;
      ++checks;
    }
  }
  report(8, bad == 0, "cycle divisibility: " + std::to_string(checks) + " counts over " + std::to_string(kCycleGraphs) +
                          " graphs, violations=" + std::to_string(bad));
}

}  // namespace

int main() {
  oracle_equivalence();
  plan_validity();
  p7a_shape();
  irreducible();
  thread_determinism();
  reuse();
  shortcut_soundness();
  cycle_divisibility();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
