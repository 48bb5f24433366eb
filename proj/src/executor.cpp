#include "incmatch/executor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>

#include "incmatch/errors.hpp"
#include "incmatch/inclusion.hpp"
#include "incmatch/work_stealing.hpp"

namespace incmatch {

// ---------------------------------------------------------------------------
// CandidateTables

CandidateTables::CandidateTables(std::size_t vertex_count, std::size_t edge_count)
    : vertices_(vertex_count), edges_(edge_count), vertex_set_(vertex_count, false), edge_set_(edge_count, false) {}

void CandidateTables::set_vertex(VertexId v, std::vector<NodeId> nodes) {
  tuples_ += nodes.size();
  tuples_ -= vertices_[v].size();
  trail_.push_back({false, v, vertex_set_[v], std::move(vertices_[v]), {}});
  vertices_[v] = std::move(nodes);
  vertex_set_[v] = true;
  peak_ = std::max(peak_, tuples_);
}

void CandidateTables::set_edge(EdgeId e, std::vector<Arc> rows) {
  tuples_ += rows.size();
  tuples_ -= edges_[e].size();
  trail_.push_back({true, e, edge_set_[e], {}, std::move(edges_[e])});
  edges_[e] = std::move(rows);
  edge_set_[e] = true;
  peak_ = std::max(peak_, tuples_);
}

void CandidateTables::rollback(std::size_t mark) {
  while (trail_.size() > mark) {
    TrailEntry& t = trail_.back();
    if (t.is_edge) {
      tuples_ -= edges_[t.id].size();
      tuples_ += t.old_edge.size();
      edges_[t.id] = std::move(t.old_edge);
      edge_set_[t.id] = t.was_set;
    } else {
      tuples_ -= vertices_[t.id].size();
      tuples_ += t.old_vertex.size();
      vertices_[t.id] = std::move(t.old_vertex);
      vertex_set_[t.id] = t.was_set;
    }
    trail_.pop_back();
  }
}

bool CandidateTables::edge_contains(EdgeId e, Arc arc) const {
  const auto& rows = edges_[e];
  return std::binary_search(rows.begin(), rows.end(), arc);
}

std::uint64_t CandidateTables::checksum() const {
  // FNV-1a over presence flags and contents.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    mix(vertex_set_[v] ? 0x5a : 0xa5);
    mix(vertices_[v].size());
    for (NodeId n : vertices_[v]) mix(n);
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    mix(edge_set_[e] ? 0x3c : 0xc3);
    mix(edges_[e].size());
    for (const Arc& a : edges_[e]) mix((std::uint64_t{a.src} << 32) | a.dst);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Leaf combination

namespace {

bool disjoint(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

Arc oriented(const PatternEdge& e, VertexId near, NodeId near_node, NodeId far_node) {
  return e.src == near ? Arc{near_node, far_node} : Arc{far_node, near_node};
}

const std::vector<Arc>& require_edge(const CandidateTables& tables, const PatternGraph& pattern, EdgeId e) {
  if (!tables.has_edge(e)) throw std::logic_error("leaf reached before edge " + pattern.edge_label(e) + " was materialized");
  return tables.edge(e);
}

}  // namespace

std::uint64_t combine_leaf(const PatternGraph& pattern, const CandidateTables& tables, std::span<const NodeId> binding,
                           const LeafOptions& options, LeafStats& stats, const EmbeddingSink& sink) {
  ++stats.leaves;
  const auto n = pattern.vertex_count();

  std::vector<NodeId> bound_nodes;
  std::vector<VertexId> unbound;
  for (VertexId v = 0; v < n; ++v) {
    if (binding[v] == kUnbound) {
      unbound.push_back(v);
    } else {
      bound_nodes.push_back(binding[v]);
    }
  }
  std::sort(bound_nodes.begin(), bound_nodes.end());
  if (std::adjacent_find(bound_nodes.begin(), bound_nodes.end()) != bound_nodes.end()) return 0;

  // Edges between two bound vertices are decided already.
  for (EdgeId e = 0; e < pattern.edge_count(); ++e) {
    const auto& edge = pattern.edge(e);
    if (binding[edge.src] == kUnbound || binding[edge.dst] == kUnbound) continue;
    require_edge(tables, pattern, e);
    if (!tables.edge_contains(e, {binding[edge.src], binding[edge.dst]})) return 0;
  }

  // Semijoin each unbound vertex's table with the tables of its edges to
  // bound vertices, dropping nodes already taken.
  std::vector<std::vector<NodeId>> cand(n);
  for (VertexId x : unbound) {
    if (!tables.has_vertex(x)) throw std::logic_error("leaf reached before vertex " + pattern.name(x) + " was materialized");
    for (NodeId m : tables.vertex(x)) {
      if (std::binary_search(bound_nodes.begin(), bound_nodes.end(), m)) continue;
      bool ok = true;
      for (EdgeId e : pattern.incident_edges(x)) {
        const auto& edge = pattern.edge(e);
        const VertexId p = edge.other(x);
        if (binding[p] == kUnbound) continue;
        require_edge(tables, pattern, e);
        if (!tables.edge_contains(e, oriented(edge, x, m, binding[p]))) {
          ok = false;
          break;
        }
      }
      if (ok) cand[x].push_back(m);
    }
    if (cand[x].empty()) return 0;
  }

  std::vector<NodeId> assignment(binding.begin(), binding.end());
  if (unbound.empty()) {
    if (options.mode == MatchMode::kEnumerate && sink) sink(assignment);
    return 1;
  }

  std::vector<EdgeId> inner;
  for (EdgeId e = 0; e < pattern.edge_count(); ++e) {
    const auto& edge = pattern.edge(e);
    if (binding[edge.src] == kUnbound && binding[edge.dst] == kUnbound) {
      require_edge(tables, pattern, e);
      inner.push_back(e);
    }
  }

  // Backtracking over unbound vertices, smallest candidate set first.
  std::sort(unbound.begin(), unbound.end(),
            [&](VertexId a, VertexId b) { return std::make_pair(cand[a].size(), a) < std::make_pair(cand[b].size(), b); });
  auto enumerate = [&](bool emit) {
    std::uint64_t found = 0;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      if (depth == unbound.size()) {
        ++found;
        if (emit && sink) sink(assignment);
        return;
      }
      const VertexId x = unbound[depth];
      for (NodeId m : cand[x]) {
        bool ok = true;
        for (std::size_t j = 0; j < depth && ok; ++j) ok = assignment[unbound[j]] != m;
        if (!ok) continue;
        assignment[x] = m;
        for (EdgeId e : inner) {
          const auto& edge = pattern.edge(e);
          if (!edge.touches(x)) continue;
          const NodeId s = assignment[edge.src];
          const NodeId d = assignment[edge.dst];
          if (s == kUnbound || d == kUnbound) continue;
          if (!tables.edge_contains(e, {s, d})) {
            ok = false;
            break;
          }
        }
        if (ok) self(self, depth + 1);
        assignment[x] = kUnbound;
      }
    };
    rec(rec, 0);
    return found;
  };

  if (options.mode == MatchMode::kCount && options.use_shortcut && inner.empty()) {
    bool independent = true;
    for (std::size_t i = 0; i < unbound.size() && independent; ++i) {
      for (std::size_t j = i + 1; j < unbound.size() && independent; ++j) {
        independent = disjoint(cand[unbound[i]], cand[unbound[j]]);
      }
    }
    if (independent) {
      ++stats.shortcut_leaves;
      std::uint64_t product = 1;
      for (VertexId x : unbound) product *= cand[x].size();
      if (options.verify_shortcut) {
        ++stats.shortcut_checks;
        if (enumerate(false) != product) ++stats.shortcut_mismatches;
      }
      return product;
    }
  }
  return enumerate(options.mode == MatchMode::kEnumerate);
}

// ---------------------------------------------------------------------------
// Exploration

std::vector<NodeId> init_start_candidates(const PatternGraph& pattern, const MatchPlan& plan, const DataGraph& graph) {
  const DegreeBound& bound = pattern.degree(plan.start);
  std::vector<NodeId> result;
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    if (bound.admits(graph.in_degree(n), graph.out_degree(n))) result.push_back(n);
  }
  return result;
}

namespace {

class Explorer {
 public:
  Explorer(const PatternGraph& pattern, const MatchPlan& plan, const DataGraph& graph, const RunOptions& options,
           std::atomic<std::uint64_t>& emitted)
      : pattern_(pattern),
        plan_(plan),
        graph_(graph),
        options_(options),
        emitted_(emitted),
        tables_(pattern.vertex_count(), pattern.edge_count()),
        binding_(pattern.vertex_count(), kUnbound),
        visited_(graph.node_count(), 0),
        scratch_(pattern.edge_count()) {
    stats_.adjacency_reads_by_edge.assign(pattern.edge_count(), 0);
    leaf_options_.mode = options.mode;
    leaf_options_.use_shortcut = options.use_shortcut;
    leaf_options_.verify_shortcut = options.verify_shortcut;
    if (options.mode == MatchMode::kEnumerate) {
      sink_ = [this](std::span<const NodeId> tuple) {
        if (emitted_.fetch_add(1, std::memory_order_relaxed) >= options_.max_embeddings) {
          throw CapacityError("enumeration exceeded " + std::to_string(options_.max_embeddings) + " embeddings");
        }
        embeddings_.emplace_back(tuple.begin(), tuple.end());
      };
    }
  }

  void run_task(NodeId start_node) {
    const VertexId s = plan_.start;
    const std::uint64_t before = options_.check_trail ? tables_.checksum() : 0;
    bind(s, start_node);
    explore(0, s, start_node);
    unbind(s, start_node, 0);
    if (options_.check_trail) verify_checksum(before);
  }

  std::uint64_t count() const noexcept { return count_; }
  MatchStats& stats() noexcept {
    stats_.peak_tuples = tables_.peak_tuples();
    return stats_;
  }
  std::vector<std::vector<NodeId>>& embeddings() noexcept { return embeddings_; }

 private:
  void bind(VertexId v, NodeId node) {
    binding_[v] = node;
    visited_[node] = 1;
    tables_.set_vertex(v, {node});
  }

  void unbind(VertexId v, NodeId node, std::size_t mark) {
    tables_.rollback(mark);
    binding_[v] = kUnbound;
    visited_[node] = 0;
  }

  void verify_checksum(std::uint64_t expected) {
    ++stats_.trail_checks;
    if (tables_.checksum() != expected) ++stats_.trail_failures;
  }

  void explore(std::size_t i, VertexId pivot, NodeId node) {
    ++stats_.explore_calls;
    if (!materialize_split(i, pivot, node)) return;
    if (i + 1 == plan_.split.size()) {
      count_ += combine_leaf(pattern_, tables_, binding_, leaf_options_, stats_.leaf, sink_);
      return;
    }
    const VertexId next = choose_pivot(i + 1);
    if (binding_[next] != kUnbound) {
      explore(i + 1, next, binding_[next]);
      return;
    }
    if (!tables_.has_vertex(next)) full_scan(next);
    const std::size_t size = tables_.vertex(next).size();
    for (std::size_t k = 0; k < size; ++k) {
      const NodeId w = tables_.vertex(next)[k];
      if (visited_[w]) continue;
      const std::uint64_t before = options_.check_trail ? tables_.checksum() : 0;
      const std::size_t mark = tables_.checkpoint();
      bind(next, w);
      explore(i + 1, next, w);
      unbind(next, w, mark);
      if (options_.check_trail) verify_checksum(before);
    }
  }

  // Anchored steps must bind the anchor. Otherwise a bound endpoint wins, then
  // the smaller table, ties to the source.
  VertexId choose_pivot(std::size_t i) const {
    const SplitStep& step = plan_.split[i];
    if (step.anchor) return *step.anchor;
    const PatternEdge& e = pattern_.edge(step.edge);
    if (binding_[e.src] != kUnbound) return e.src;
    if (binding_[e.dst] != kUnbound) return e.dst;
    auto size = [&](VertexId v) {
      return tables_.has_vertex(v) ? tables_.vertex(v).size() : std::numeric_limits<std::size_t>::max();
    };
    return size(e.src) <= size(e.dst) ? e.src : e.dst;
  }

  void full_scan(VertexId v) {
    ++stats_.full_scans;
    std::vector<NodeId> nodes;
    const DegreeBound& bound = pattern_.degree(v);
    for (NodeId n = 0; n < graph_.node_count(); ++n) {
      if (!visited_[n] && bound.admits(graph_.in_degree(n), graph_.out_degree(n))) nodes.push_back(n);
    }
    tables_.set_vertex(v, std::move(nodes));
  }

  // Reads the pivot's arcs for split[i], then fills the included edges from
  // the filtered result.
  bool materialize_split(std::size_t i, VertexId pivot, NodeId node) {
    const EdgeId e = plan_.split[i].edge;
    const PatternEdge& edge = pattern_.edge(e);
    const VertexId far = edge.other(pivot);
    const auto arcs = edge.src == pivot ? graph_.out_arcs(node) : graph_.in_arcs(node);
    const bool has_children = !plan_.children(e).empty();

    if (binding_[far] != kUnbound && !has_children) {
      // Both ends bound: a single membership probe.
      stats_.adjacency_reads += 1;
      stats_.adjacency_reads_by_edge[e] += 1;
      if (!std::binary_search(arcs.begin(), arcs.end(), binding_[far])) return false;
      tables_.set_edge(e, {oriented(edge, pivot, node, binding_[far])});
      return true;
    }

    stats_.adjacency_reads += arcs.size();
    stats_.adjacency_reads_by_edge[e] += arcs.size();
    std::vector<NodeId>& base = scratch_[e];
    base.clear();
    const DegreeBound& bound = pattern_.degree(far);
    for (NodeId m : arcs) {
      if (m != node && bound.admits(graph_.in_degree(m), graph_.out_degree(m))) base.push_back(m);
    }
    if (!fill_edge(e, pivot, node, far, base)) return false;
    for (EdgeId child : plan_.children(e)) {
      if (!materialize_included(child, pivot, node, base)) return false;
    }
    return true;
  }

  // Fills `child` from its parent's filtered arcs, without touching adjacency.
  bool materialize_included(EdgeId child, VertexId anchor, NodeId node, const std::vector<NodeId>& parent_base) {
    const PatternEdge& edge = pattern_.edge(child);
    const VertexId far = edge.other(anchor);
    std::vector<NodeId>& base = scratch_[child];
    base.clear();
    const DegreeBound& bound = pattern_.degree(far);
    for (NodeId m : parent_base) {
      if (bound.admits(graph_.in_degree(m), graph_.out_degree(m))) base.push_back(m);
    }
    if (!fill_edge(child, anchor, node, far, base)) return false;
    for (EdgeId grandchild : plan_.children(child)) {
      if (!materialize_included(grandchild, anchor, node, base)) return false;
    }
    return true;
  }

  // A^e from the candidate far nodes, then A^far := A^far ∩ Π_far(A^e).
  bool fill_edge(EdgeId e, VertexId near, NodeId node, VertexId far, const std::vector<NodeId>& base) {
    const PatternEdge& edge = pattern_.edge(e);
    std::vector<NodeId> far_nodes;
    if (binding_[far] != kUnbound) {
      if (!std::binary_search(base.begin(), base.end(), binding_[far])) return false;
      tables_.set_edge(e, {oriented(edge, near, node, binding_[far])});
      return true;
    }
    if (tables_.has_vertex(far)) {
      const auto& current = tables_.vertex(far);
      far_nodes.reserve(std::min(current.size(), base.size()));
      std::set_intersection(base.begin(), base.end(), current.begin(), current.end(), std::back_inserter(far_nodes));
    } else {
      far_nodes = base;
    }
    std::erase_if(far_nodes, [this](NodeId m) { return visited_[m] != 0; });
    if (far_nodes.empty()) return false;

    std::vector<Arc> rows;
    rows.reserve(far_nodes.size());
    for (NodeId m : far_nodes) rows.push_back(oriented(edge, near, node, m));
    tables_.set_edge(e, std::move(rows));
    tables_.set_vertex(far, std::move(far_nodes));
    return true;
  }

  const PatternGraph& pattern_;
  const MatchPlan& plan_;
  const DataGraph& graph_;
  const RunOptions& options_;
  std::atomic<std::uint64_t>& emitted_;
  CandidateTables tables_;
  std::vector<NodeId> binding_;
  std::vector<std::uint8_t> visited_;
  std::vector<std::vector<NodeId>> scratch_;
  LeafOptions leaf_options_;
  EmbeddingSink sink_;
  std::vector<std::vector<NodeId>> embeddings_;
  std::uint64_t count_ = 0;
  MatchStats stats_;
};

}  // namespace

MatchResult run(const PatternGraph& pattern, const MatchPlan& plan, const DataGraph& graph, const RunOptions& options) {
  if (options.threads < 1) throw UsageError("thread count must be at least 1");
  if (plan.split.empty()) throw UsageError("plan has no split edges");
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<NodeId> starts = init_start_candidates(pattern, plan, graph);
  std::atomic<std::uint64_t> emitted{0};
  std::vector<std::optional<Explorer>> workers(options.threads);
  auto stealing = run_work_stealing(starts.size(), options.threads, [&](unsigned w, std::size_t task) {
    if (!workers[w]) workers[w].emplace(pattern, plan, graph, options, emitted);
    workers[w]->run_task(starts[task]);
  });

  MatchResult result;
  result.mode = options.mode;
  MatchStats& total = result.stats;
  total.adjacency_reads_by_edge.assign(pattern.edge_count(), 0);
  for (auto& w : workers) {
    if (!w) continue;
    result.embedding_count += w->count();
    const MatchStats& s = w->stats();
    total.adjacency_reads += s.adjacency_reads;
    total.peak_tuples = std::max(total.peak_tuples, s.peak_tuples);
    total.explore_calls += s.explore_calls;
    total.trail_checks += s.trail_checks;
    total.trail_failures += s.trail_failures;
    total.full_scans += s.full_scans;
    total.leaf.leaves += s.leaf.leaves;
    total.leaf.shortcut_leaves += s.leaf.shortcut_leaves;
    total.leaf.shortcut_checks += s.leaf.shortcut_checks;
    total.leaf.shortcut_mismatches += s.leaf.shortcut_mismatches;
    for (std::size_t e = 0; e < pattern.edge_count(); ++e) total.adjacency_reads_by_edge[e] += s.adjacency_reads_by_edge[e];
    auto& emb = w->embeddings();
    result.embeddings.insert(result.embeddings.end(), std::make_move_iterator(emb.begin()),
                             std::make_move_iterator(emb.end()));
  }
  for (EdgeId e : plan.removed_edges()) total.adjacency_reads_removed += total.adjacency_reads_by_edge[e];
  for (const auto& s : stealing) total.tasks_stolen += s.stolen;
  total.tasks = starts.size();
  total.threads = options.threads;

  if (options.with_occurrences) {
    try {
      const std::uint64_t aut = automorphism_count(pattern);
      result.automorphisms = aut;
      result.occurrence_count = result.embedding_count / aut;
    } catch (const CapacityError&) {
      // Too many vertices for the permutation search: embeddings only.
    }
  }
  total.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

MatchResult match(const PatternGraph& pattern, const DataGraph& graph, const RunOptions& options,
                  ReduceOptions reduce_options) {
  const InclusionClosure closure = compute_closure(pattern);
  const MatchPlan plan = reduce(pattern, closure, reduce_options);
  return run(pattern, plan, graph, options);
}

}  // namespace incmatch
