#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incmatch/digraph.hpp"
#include "incmatch/pattern.hpp"

namespace incmatch {

// Each ordered pair (u, v), u != v, becomes an arc with probability p.
DataGraph random_digraph(std::size_t nodes, double p, std::uint64_t seed);

// Random spanning tree with random orientations plus extra edges with
// probability `extra_p`; never produces antiparallel pairs.
PatternGraph random_connected_pattern(std::size_t vertices, double extra_p, std::uint64_t seed);

// Directed k-cycle v0 -> v1 -> ... -> v0.
PatternGraph cycle_pattern(std::size_t k);

// The shipped fixtures as text.
extern const char* const kPatternP3;
extern const char* const kPatternP4;
extern const char* const kPatternP7a;

struct NamedPattern {
  std::string name;
  PatternGraph pattern;
};

// P3, P4, P7a and `random_count` random 4-6 vertex patterns.
std::vector<NamedPattern> fuzz_patterns(std::size_t random_count, std::uint64_t seed);

struct GraphConfig {
  std::size_t nodes;
  double p;
  std::uint64_t seed;
};

// nodes in {6, 9, 12, 15, 18, 21, 24} x p in {0.05, 0.1, 0.2, 0.3, 0.4} x
// `seeds_per_config` seeds derived from `seed`.
std::vector<GraphConfig> fuzz_graph_configs(std::size_t seeds_per_config, std::uint64_t seed);

}  // namespace incmatch
