#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "incmatch/digraph.hpp"
#include "incmatch/pattern.hpp"
#include "incmatch/reducer.hpp"

namespace incmatch {

inline constexpr NodeId kUnbound = std::numeric_limits<NodeId>::max();

enum class MatchMode { kCount, kEnumerate };

// Unary tables A^v and binary tables A^e of one exploration branch, with a
// trail so a branch can be undone exactly.
class CandidateTables {
 public:
  CandidateTables(std::size_t vertex_count, std::size_t edge_count);

  bool has_vertex(VertexId v) const { return vertex_set_[v]; }
  bool has_edge(EdgeId e) const { return edge_set_[e]; }
  const std::vector<NodeId>& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<Arc>& edge(EdgeId e) const { return edges_[e]; }

  // Replace a table; the previous content goes on the trail. Input sorted.
  void set_vertex(VertexId v, std::vector<NodeId> nodes);
  void set_edge(EdgeId e, std::vector<Arc> rows);

  std::size_t checkpoint() const noexcept { return trail_.size(); }
  void rollback(std::size_t mark);

  bool edge_contains(EdgeId e, Arc arc) const;

  std::size_t tuple_count() const noexcept { return tuples_; }
  std::size_t peak_tuples() const noexcept { return peak_; }
  std::uint64_t checksum() const;

 private:
  struct TrailEntry {
    bool is_edge;
    std::uint32_t id;
    bool was_set;
    std::vector<NodeId> old_vertex;
    std::vector<Arc> old_edge;
  };

  std::vector<std::vector<NodeId>> vertices_;
  std::vector<std::vector<Arc>> edges_;
  std::vector<bool> vertex_set_;
  std::vector<bool> edge_set_;
  std::vector<TrailEntry> trail_;
  std::size_t tuples_ = 0;
  std::size_t peak_ = 0;
};

struct LeafStats {
  std::uint64_t leaves = 0;
  std::uint64_t shortcut_leaves = 0;
  std::uint64_t shortcut_checks = 0;  // shadow enumerations run
  std::uint64_t shortcut_mismatches = 0;
};

using EmbeddingSink = std::function<void(std::span<const NodeId>)>;

struct LeafOptions {
  MatchMode mode = MatchMode::kCount;
  bool use_shortcut = true;
  bool verify_shortcut = false;
};

// Combines the candidate tables of the vertices left unbound in `binding`
// (kUnbound entries). An assignment is accepted when it is injective over all
// bound and unbound nodes and every pattern edge's image is a row of that
// edge's table. Returns the number of accepted assignments; in enumerate mode
// each one is also passed to `sink` as a full node tuple in vertex order.
std::uint64_t combine_leaf(const PatternGraph& pattern, const CandidateTables& tables, std::span<const NodeId> binding,
                           const LeafOptions& options, LeafStats& stats, const EmbeddingSink& sink = {});

// Nodes whose in- and out-degree reach the start vertex's, ascending.
std::vector<NodeId> init_start_candidates(const PatternGraph& pattern, const MatchPlan& plan, const DataGraph& graph);

struct RunOptions {
  MatchMode mode = MatchMode::kCount;
  unsigned threads = 1;
  bool use_shortcut = true;
  // Shadow-enumerate every leaf where the product shortcut fires.
  bool verify_shortcut = false;
  // Checksum all tables around each bind/undo pair.
  bool check_trail = false;
  std::size_t max_embeddings = 10'000'000;
  bool with_occurrences = false;
};

struct MatchStats {
  std::uint64_t adjacency_reads = 0;
  std::uint64_t adjacency_reads_removed = 0;  // reads attributed to removed edges
  std::uint64_t peak_tuples = 0;
  std::uint64_t explore_calls = 0;
  std::uint64_t trail_checks = 0;
  std::uint64_t trail_failures = 0;
  std::uint64_t full_scans = 0;  // pivots without a candidate table
  LeafStats leaf;
  std::uint64_t tasks = 0;
  std::uint64_t tasks_stolen = 0;
  double wall_time_ms = 0;
  unsigned threads = 1;
  std::vector<std::uint64_t> adjacency_reads_by_edge;
};

struct MatchResult {
  MatchMode mode = MatchMode::kCount;
  std::uint64_t embedding_count = 0;
  std::optional<std::uint64_t> occurrence_count;
  std::optional<std::uint64_t> automorphisms;
  std::vector<std::vector<NodeId>> embeddings;  // enumerate mode, unordered
  MatchStats stats;
};

// Executes `plan` over `graph`, one task per start candidate, spread over
// `options.threads` workers with work stealing.
MatchResult run(const PatternGraph& pattern, const MatchPlan& plan, const DataGraph& graph, const RunOptions& options = {});

// Parse-free convenience: closure, reduction and run in one call.
MatchResult match(const PatternGraph& pattern, const DataGraph& graph, const RunOptions& options = {},
                  ReduceOptions reduce_options = {});

}  // namespace incmatch
