#include <doctest.h>

#include <algorithm>

#include "incmatch/errors.hpp"
#include "incmatch/executor.hpp"
#include "incmatch/generators.hpp"
#include "incmatch/oracle.hpp"

using namespace incmatch;

namespace {

DataGraph cycle_graph(NodeId n) {
  std::vector<Arc> arcs;
  for (NodeId v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  return DataGraph::from_arcs(n, arcs);
}

}  // namespace

TEST_CASE("tables roll back exactly") {
  CandidateTables t(3, 2);
  const auto empty = t.checksum();
  t.set_vertex(0, {1, 2, 3});
  const auto mark = t.checkpoint();
  const auto one = t.checksum();
  t.set_vertex(0, {2});
  t.set_edge(1, {{2, 5}});
  CHECK(t.tuple_count() == 2);
  CHECK(t.edge_contains(1, {2, 5}));
  t.rollback(mark);
  CHECK(t.checksum() == one);
  CHECK(t.vertex(0) == std::vector<NodeId>{1, 2, 3});
  CHECK_FALSE(t.has_edge(1));
  CHECK(t.peak_tuples() == 3);
  t.rollback(0);
  CHECK(t.checksum() == empty);
  CHECK_FALSE(t.has_vertex(0));
}

TEST_CASE("leaf joins through a removed-edge table") {
  const PatternGraph p = parse_pattern("a g\n");
  CandidateTables t(2, 1);
  t.set_vertex(0, {5, 7});
  t.set_vertex(1, {9});
  t.set_edge(0, {{5, 9}});
  const std::vector<NodeId> binding{kUnbound, kUnbound};
  LeafStats stats;
  std::vector<std::vector<NodeId>> seen;
  const auto n = combine_leaf(p, t, binding, {MatchMode::kEnumerate}, stats,
                              [&](std::span<const NodeId> tuple) { seen.emplace_back(tuple.begin(), tuple.end()); });
  CHECK(n == 1);
  REQUIRE(seen.size() == 1);
  CHECK(seen[0] == std::vector<NodeId>{5, 9});
}

TEST_CASE("product shortcut") {
  const PatternGraph p = parse_pattern("x a\nx b\n");
  const std::vector<NodeId> binding{0, kUnbound, kUnbound};
  LeafOptions options;
  options.verify_shortcut = true;

  CandidateTables t(3, 2);
  t.set_vertex(0, {0});
  t.set_vertex(1, {1, 2});
  t.set_vertex(2, {3});
  t.set_edge(0, {{0, 1}, {0, 2}});
  t.set_edge(1, {{0, 3}});
  LeafStats stats;
  CHECK(combine_leaf(p, t, binding, options, stats) == 2);
  CHECK(stats.shortcut_leaves == 1);
  CHECK(stats.shortcut_checks == 1);
  CHECK(stats.shortcut_mismatches == 0);

  // Overlapping candidates fall back to enumeration.
  t.set_vertex(2, {2});
  t.set_edge(1, {{0, 2}});
  LeafStats overlap;
  CHECK(combine_leaf(p, t, binding, options, overlap) == 1);
  CHECK(overlap.shortcut_leaves == 0);
}

TEST_CASE("leaf examples") {
  const PatternGraph p = parse_pattern("r x\nr y\n");
  const std::vector<NodeId> binding{0, kUnbound, kUnbound};
  CandidateTables t(3, 2);
  t.set_vertex(0, {0});
  t.set_vertex(1, {1, 2});
  t.set_vertex(2, {3, 4});
  t.set_edge(0, {{0, 1}, {0, 2}});
  t.set_edge(1, {{0, 3}, {0, 4}});
  LeafStats stats;
  CHECK(combine_leaf(p, t, binding, {}, stats) == 4);
  CHECK(stats.shortcut_leaves == 1);

  t.set_vertex(2, {2, 3});
  t.set_edge(1, {{0, 2}, {0, 3}});
  CHECK(combine_leaf(p, t, binding, {}, stats) == 3);
  CHECK(stats.shortcut_leaves == 1);
}

TEST_CASE("small fixtures") {
  const PatternGraph p3 = parse_pattern(kPatternP3);
  RunOptions options;
  options.with_occurrences = true;
  const MatchResult tri = match(p3, cycle_graph(3), options);
  CHECK(tri.embedding_count == 3);
  CHECK(tri.occurrence_count == 1);

  const DataGraph k3 = DataGraph::from_arcs(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
  const MatchResult full = match(p3, k3, options);
  CHECK(full.embedding_count == 6);
  CHECK(full.occurrence_count == 2);

  const MatchResult four = match(parse_pattern(kPatternP4), cycle_graph(4));
  CHECK(four.embedding_count == 4);
  CHECK(four.stats.leaf.leaves == 4);
  CHECK(match(parse_pattern(kPatternP4), cycle_graph(5)).embedding_count == 0);
}

TEST_CASE("start candidates use both degrees") {
  const PatternGraph p = parse_pattern(kPatternP3);
  const MatchPlan plan = reduce(p, compute_closure(p));
  CHECK(init_start_candidates(p, plan, cycle_graph(3)) == std::vector<NodeId>{0, 1, 2});
  const DataGraph star = DataGraph::from_arcs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}});
  CHECK(init_start_candidates(p, plan, star) == std::vector<NodeId>{0, 1});
  const PatternGraph chain = parse_pattern("a b\nb c\n");
  const MatchPlan chain_plan = reduce(chain, compute_closure(chain));
  CHECK(init_start_candidates(chain, chain_plan, DataGraph::from_arcs(2, {{0, 1}})).empty());
}

TEST_CASE("enumeration matches the oracle list") {
  const auto patterns = fuzz_patterns(6, 11);
  RunOptions options;
  options.mode = MatchMode::kEnumerate;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DataGraph g = random_digraph(12, 0.25, seed);
    for (const auto& np : patterns) {
      MatchResult r = match(np.pattern, g, options);
      std::sort(r.embeddings.begin(), r.embeddings.end());
      const OracleResult want = enumerate_bruteforce(g, np.pattern, true);
      CHECK(r.embedding_count == want.embedding_count);
      CHECK(r.embeddings == want.embeddings);
    }
  }
}

TEST_CASE("counts agree across threads, reduction and shortcut settings") {
  const PatternGraph p = parse_pattern(kPatternP7a);
  const InclusionClosure closure = compute_closure(p);
  const MatchPlan on = reduce(p, closure);
  const MatchPlan off = reduce(p, closure, {false});
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DataGraph g = random_digraph(20, 0.3, seed);
    const auto want = enumerate_bruteforce(g, p).embedding_count;
    for (unsigned threads : {1u, 2u, 8u}) {
      RunOptions options;
      options.threads = threads;
      options.check_trail = true;
      const MatchResult a = run(p, on, g, options);
      CHECK(a.embedding_count == want);
      CHECK(a.stats.adjacency_reads_removed == 0);
      CHECK(a.stats.trail_failures == 0);
      CHECK(a.stats.trail_checks > 0);
      CHECK(run(p, off, g, options).embedding_count == want);
      options.use_shortcut = false;
      CHECK(run(p, on, g, options).embedding_count == want);
    }
  }
}

TEST_CASE("removed edges never read adjacency") {
  const PatternGraph p = parse_pattern(kPatternP7a);
  const MatchPlan plan = reduce(p, compute_closure(p));
  const MatchResult r = run(p, plan, random_digraph(40, 0.2, 9));
  for (EdgeId e : plan.removed_edges()) CHECK(r.stats.adjacency_reads_by_edge[e] == 0);
  CHECK(r.stats.adjacency_reads > 0);
}

TEST_CASE("guards") {
  const PatternGraph p = parse_pattern(kPatternP3);
  const MatchPlan plan = reduce(p, compute_closure(p));
  RunOptions bad;
  bad.threads = 0;
  CHECK_THROWS_AS(run(p, plan, cycle_graph(3), bad), UsageError);

  RunOptions small;
  small.mode = MatchMode::kEnumerate;
  small.max_embeddings = 2;
  CHECK_THROWS_AS(run(p, plan, cycle_graph(3), small), CapacityError);

  std::vector<std::pair<VertexId, VertexId>> chain;
  for (VertexId v = 0; v < 13; ++v) chain.push_back({v, v + 1});
  const PatternGraph big = pattern_from_pairs(chain);
  RunOptions occ;
  occ.with_occurrences = true;
  const MatchResult r = match(big, cycle_graph(20), occ);
  CHECK(r.embedding_count == 20);
  CHECK_FALSE(r.occurrence_count.has_value());
}
