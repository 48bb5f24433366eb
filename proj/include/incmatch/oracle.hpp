#pragma once

#include <cstdint>
#include <vector>

#include "incmatch/digraph.hpp"
#include "incmatch/pattern.hpp"

namespace incmatch {

constexpr std::size_t kOracleMaxVertices = 8;
constexpr std::size_t kOracleMaxArcs = 50'000;

struct OracleResult {
  std::uint64_t embedding_count = 0;
  // Node tuples in pattern-vertex order, sorted; filled only when requested.
  std::vector<std::vector<NodeId>> embeddings;
};

// Plain depth-first search over pattern vertices in index order. Throws
// CapacityError when the pattern or graph exceeds the size guards.
OracleResult enumerate_bruteforce(const DataGraph& graph, const PatternGraph& pattern, bool keep_embeddings = false);

}  // namespace incmatch
