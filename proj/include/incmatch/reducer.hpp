#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incmatch/inclusion.hpp"
#include "incmatch/pattern.hpp"

namespace incmatch {

struct SplitStep {
  EdgeId edge = 0;
  // Vertex the covered siblings hang off. When set, the executor must bind
  // this endpoint before reading adjacency for the step.
  std::optional<VertexId> anchor;
  // Removed edges materialized from this step, parents before children.
  std::vector<EdgeId> covered;
  // Vertex searchSplit was standing on when it picked the edge.
  VertexId search_vertex = 0;
};

struct RemovedEdge {
  EdgeId edge = 0;
  EdgeId parent = 0;
  VertexId anchor = 0;
  std::size_t step = 0;  // index into MatchPlan::split of the chain root
};

struct MaterializationEntry {
  enum class Kind : std::uint8_t { kVertex, kEdge };
  Kind kind = Kind::kVertex;
  std::uint32_t id = 0;
  std::size_t step = 0;  // 0 for the start vertex, k for the k-th explored edge
};

struct ReduceStats {
  std::uint64_t search_restarts = 0;
  std::uint64_t work = 0;  // edge/fact inspections
};

class MatchPlan {
 public:
  VertexId start = 0;
  std::vector<SplitStep> split;
  std::vector<RemovedEdge> removed;
  std::vector<MaterializationEntry> materialization_order;
  bool reduction_enabled = true;
  ReduceStats stats;

  // Removed edges whose materialization parent is `e`, in materialization order.
  const std::vector<EdgeId>& children(EdgeId e) const { return children_.at(e); }
  std::optional<EdgeId> parent(EdgeId e) const;
  bool is_removed(EdgeId e) const { return parent(e).has_value(); }
  std::vector<EdgeId> kept_edges() const;
  std::vector<EdgeId> removed_edges() const;

  void index(std::size_t edge_count);

 private:
  std::vector<std::vector<EdgeId>> children_;
  std::vector<std::optional<EdgeId>> parent_;
};

struct ReduceOptions {
  bool enable_reduction = true;
};

// Working state of the greedy cover search. Exposed so the individual steps
// can be driven and inspected on their own.
class ReductionState {
 public:
  ReductionState(const PatternGraph& pattern, const InclusionClosure& closure, ReduceOptions options = {});

  bool visited(EdgeId e) const { return visited_.at(e); }
  bool scheduled(VertexId v) const { return scheduled_.at(v); }
  bool has_unvisited(VertexId v) const;
  bool all_visited() const;
  void schedule(VertexId v) { scheduled_.at(v) = true; }

  // Unvisited edges `e` would cover when picked at `v`.
  std::vector<EdgeId> coverage(EdgeId e, VertexId v) const;

  // Best unvisited edge at `v`: most coverage, then the endpoint across the
  // edge with the highest degree, then the lowest edge index. Throws
  // UsageError when `v` has no unvisited edge.
  EdgeId find_max_e_coverage(VertexId v) const;

  // Marks `chosen` visited and removes every unvisited sibling it covers at
  // `anchor`, assigning each the tightest includer as parent.
  std::vector<RemovedEdge> update_v_inclusion(VertexId anchor, EdgeId chosen);

  // Enqueues `e` (picked while standing on `v`) and applies the inclusion update.
  void take(EdgeId e, VertexId v);

  void search_split(VertexId u);

  MatchPlan finish(VertexId start) &&;

  const std::vector<SplitStep>& split() const noexcept { return split_; }
  const std::vector<RemovedEdge>& removed() const noexcept { return removed_; }
  const ReduceStats& stats() const noexcept { return stats_; }

 private:
  std::optional<VertexId> neighbor_max_degree(VertexId w) const;

  const PatternGraph* pattern_;
  const InclusionClosure* closure_;
  ReduceOptions options_;
  std::vector<bool> visited_;
  std::vector<bool> scheduled_;
  std::vector<SplitStep> split_;
  std::vector<RemovedEdge> removed_;
  mutable ReduceStats stats_;
};

// Highest total degree, ties to the lowest vertex index.
VertexId choose_start_vertex(const PatternGraph& pattern);

// Greedy constraint cover and matching plan. Throws PlanError for a
// disconnected pattern.
MatchPlan reduce(const PatternGraph& pattern, const InclusionClosure& closure, ReduceOptions options = {});

// Structural problems of a plan (empty when valid): cover partition, parent
// forest, parents scheduled first, anchors bound in time, justification.
std::vector<std::string> validate_plan(const PatternGraph& pattern, const InclusionClosure& closure, const MatchPlan& plan);

// Text dump used by the `plan` command.
std::string format_plan(const PatternGraph& pattern, const InclusionClosure& closure, const MatchPlan& plan);

}  // namespace incmatch
