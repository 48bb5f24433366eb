#include "incmatch/oracle.hpp"

#include <algorithm>
#include <string>

#include "incmatch/errors.hpp"

namespace incmatch {

OracleResult enumerate_bruteforce(const DataGraph& graph, const PatternGraph& pattern, bool keep_embeddings) {
  if (pattern.vertex_count() > kOracleMaxVertices) {
    throw CapacityError("oracle supports at most " + std::to_string(kOracleMaxVertices) + " pattern vertices");
  }
  if (graph.arc_count() > kOracleMaxArcs) {
    throw CapacityError("oracle supports at most " + std::to_string(kOracleMaxArcs) + " arcs");
  }

  const std::size_t k = pattern.vertex_count();
  const std::size_t n = graph.node_count();
  OracleResult result;
  std::vector<NodeId> image(k);
  std::vector<bool> used(n, false);

  auto consistent = [&](VertexId v) {
    for (const PatternEdge& e : pattern.edges()) {
      if (!e.touches(v) || e.src > v || e.dst > v) continue;
      if (!graph.has_arc(image[e.src], image[e.dst])) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, VertexId v) -> void {
    if (v == k) {
      ++result.embedding_count;
      if (keep_embeddings) result.embeddings.push_back(image);
      return;
    }
    for (NodeId node = 0; node < n; ++node) {
      if (used[node]) continue;
      image[v] = node;
      if (!consistent(v)) continue;
      used[node] = true;
      self(self, v + 1);
      used[node] = false;
    }
  };
  rec(rec, 0);
  std::sort(result.embeddings.begin(), result.embeddings.end());
  return result;
}

}  // namespace incmatch
