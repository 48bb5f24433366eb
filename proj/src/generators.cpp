#include "incmatch/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace incmatch {

const char* const kPatternP3 = "a b\nb c\nc a\n";
const char* const kPatternP4 = "a b\nb c\nc d\nd a\n";
const char* const kPatternP7a =
    "a b\na c\nb c\nf c\nb e\nc e\nc d\ne f\nf g\nd g\n";

DataGraph random_digraph(std::size_t nodes, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < nodes; ++u) {
    for (NodeId v = 0; v < nodes; ++v) {
      if (u != v && coin(rng)) arcs.push_back({u, v});
    }
  }
  return DataGraph::from_arcs(nodes, std::move(arcs));
}

PatternGraph random_connected_pattern(std::size_t vertices, double extra_p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution extra(extra_p);
  std::set<std::pair<VertexId, VertexId>> linked;  // unordered, stored min/max
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto add = [&](VertexId a, VertexId b) {
    if (linked.insert({std::min(a, b), std::max(a, b)}).second) pairs.push_back(coin(rng) ? std::pair{a, b} : std::pair{b, a});
  };
  for (VertexId v = 1; v < vertices; ++v) {
    add(std::uniform_int_distribution<VertexId>(0, v - 1)(rng), v);
  }
  for (VertexId a = 0; a < vertices; ++a) {
    for (VertexId b = a + 1; b < vertices; ++b) {
      if (extra(rng)) add(a, b);
    }
  }
  return pattern_from_pairs(pairs);
}

PatternGraph cycle_pattern(std::size_t k) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 0; v < k; ++v) pairs.push_back({v, static_cast<VertexId>((v + 1) % k)});
  return pattern_from_pairs(pairs);
}

std::vector<NamedPattern> fuzz_patterns(std::size_t random_count, std::uint64_t seed) {
  std::vector<NamedPattern> out;
  out.push_back({"P3", parse_pattern(kPatternP3)});
  out.push_back({"P4", parse_pattern(kPatternP4)});
  out.push_back({"P7a", parse_pattern(kPatternP7a)});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t k = 4 + i % 3;
    out.push_back({"R" + std::to_string(i) + "_" + std::to_string(k), random_connected_pattern(k, 0.35, rng())});
  }
  return out;
}

std::vector<GraphConfig> fuzz_graph_configs(std::size_t seeds_per_config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GraphConfig> out;
  for (std::size_t n : {6, 9, 12, 15, 18, 21, 24}) {
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4}) {
      for (std::size_t s = 0; s < seeds_per_config; ++s) out.push_back({n, p, rng()});
    }
  }
  return out;
}

}  // namespace incmatch
