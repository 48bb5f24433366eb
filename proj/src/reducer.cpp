#include "incmatch/reducer.hpp"

#include <algorithm>
#include <sstream>

#include "incmatch/errors.hpp"

namespace incmatch {

std::optional<EdgeId> MatchPlan::parent(EdgeId e) const { return parent_.at(e); }

std::vector<EdgeId> MatchPlan::kept_edges() const {
  std::vector<EdgeId> result;
  for (const auto& s : split) result.push_back(s.edge);
  return result;
}

std::vector<EdgeId> MatchPlan::removed_edges() const {
  std::vector<EdgeId> result;
  for (const auto& r : removed) result.push_back(r.edge);
  return result;
}

void MatchPlan::index(std::size_t edge_count) {
  children_.assign(edge_count, {});
  parent_.assign(edge_count, std::nullopt);
  for (const auto& r : removed) {
    children_.at(r.parent).push_back(r.edge);
    parent_.at(r.edge) = r.parent;
  }
}

ReductionState::ReductionState(const PatternGraph& pattern, const InclusionClosure& closure, ReduceOptions options)
    : pattern_(&pattern),
      closure_(&closure),
      options_(options),
      visited_(pattern.edge_count(), false),
      scheduled_(pattern.vertex_count(), false) {}

bool ReductionState::has_unvisited(VertexId v) const {
  for (EdgeId e : pattern_->incident_edges(v)) {
    if (!visited_[e]) return true;
  }
  return false;
}

bool ReductionState::all_visited() const {
  return std::all_of(visited_.begin(), visited_.end(), [](bool b) { return b; });
}

std::vector<EdgeId> ReductionState::coverage(EdgeId e, VertexId v) const {
  std::vector<EdgeId> result;
  // Only scheduled vertices can anchor.
  if (!options_.enable_reduction || !scheduled_[v]) return result;
  for (EdgeId x : closure_->covered_at(e, v)) {
    ++stats_.work;
    if (!visited_[x]) result.push_back(x);
  }
  return result;
}

EdgeId ReductionState::find_max_e_coverage(VertexId v) const {
  std::vector<EdgeId> candidates;
  for (EdgeId e : pattern_->incident_edges(v)) {
    if (!visited_[e]) candidates.push_back(e);
  }
  if (candidates.empty()) throw UsageError("vertex " + pattern_->name(v) + " has no unvisited edge");
  std::sort(candidates.begin(), candidates.end());
  if (!scheduled_[v]) {
    // Stay connected to the already scheduled part of the pattern.
    std::vector<EdgeId> linked;
    for (EdgeId e : candidates) {
      if (scheduled_[pattern_->edge(e).other(v)]) linked.push_back(e);
    }
    if (!linked.empty()) candidates = std::move(linked);
  }

  EdgeId best = candidates.front();
  std::size_t best_cover = 0;
  std::uint32_t best_deg = 0;
  bool first = true;
  for (EdgeId e : candidates) {
    ++stats_.work;
    const std::size_t cover = coverage(e, v).size();
    const std::uint32_t deg = pattern_->total_deg(pattern_->edge(e).other(v));
    if (first || cover > best_cover || (cover == best_cover && deg > best_deg)) {
      best = e;
      best_cover = cover;
      best_deg = deg;
      first = false;
    }
  }
  return best;
}

std::vector<RemovedEdge> ReductionState::update_v_inclusion(VertexId anchor, EdgeId chosen) {
  visited_.at(chosen) = true;
  std::vector<EdgeId> covered = coverage(chosen, anchor);
  // Ascending far-endpoint degree puts parents before children.
  auto far_deg = [&](EdgeId e) { return pattern_->total_deg(pattern_->edge(e).other(anchor)); };
  std::sort(covered.begin(), covered.end(), [&](EdgeId a, EdgeId b) {
    return std::make_pair(far_deg(a), a) < std::make_pair(far_deg(b), b);
  });

  std::vector<RemovedEdge> out;
  std::vector<EdgeId> chain{chosen};
  for (EdgeId x : covered) {
    EdgeId parent = chosen;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      ++stats_.work;
      if (*it == chosen || closure_->covers(*it, x, anchor)) {
        parent = *it;
        break;
      }
    }
    visited_[x] = true;
    scheduled_[pattern_->edge(x).src] = true;
    scheduled_[pattern_->edge(x).dst] = true;
    chain.push_back(x);
    out.push_back({x, parent, anchor, split_.size()});
  }
  return out;
}

void ReductionState::take(EdgeId e, VertexId v) {
  SplitStep step;
  step.edge = e;
  step.search_vertex = v;
  auto removed = update_v_inclusion(v, e);
  scheduled_[pattern_->edge(e).src] = true;
  scheduled_[pattern_->edge(e).dst] = true;
  if (!removed.empty()) step.anchor = v;
  for (const auto& r : removed) {
    step.covered.push_back(r.edge);
    removed_.push_back(r);
  }
  split_.push_back(std::move(step));
}

std::optional<VertexId> ReductionState::neighbor_max_degree(VertexId w) const {
  std::optional<VertexId> best;
  for (EdgeId e : pattern_->incident_edges(w)) {
    ++stats_.work;
    const VertexId x = pattern_->edge(e).other(w);
    if (!has_unvisited(x)) continue;
    if (!best || pattern_->total_deg(x) > pattern_->total_deg(*best) ||
        (pattern_->total_deg(x) == pattern_->total_deg(*best) && x < *best)) {
      best = x;
    }
  }
  return best;
}

void ReductionState::search_split(VertexId u) {
  ++stats_.search_restarts;
  std::optional<VertexId> v = u;
  while (v) {
    std::optional<VertexId> w;
    while (has_unvisited(*v)) {
      const EdgeId mec = find_max_e_coverage(*v);
      take(mec, *v);
      w = pattern_->edge(mec).other(*v);
    }
    if (!w) return;
    v = neighbor_max_degree(*w);
  }
}

MatchPlan ReductionState::finish(VertexId start) && {
  MatchPlan plan;
  plan.start = start;
  plan.split = std::move(split_);
  plan.removed = std::move(removed_);
  plan.reduction_enabled = options_.enable_reduction;
  plan.stats = stats_;
  plan.index(pattern_->edge_count());

  // Materialization order: start vertex, then per explored edge the edge, its
  // new endpoints, and each covered edge followed by its new endpoint.
  std::vector<bool> vertex_done(pattern_->vertex_count(), false);
  auto add_vertex = [&](VertexId v, std::size_t step) {
    if (vertex_done[v]) return;
    vertex_done[v] = true;
    plan.materialization_order.push_back({MaterializationEntry::Kind::kVertex, v, step});
  };
  add_vertex(start, 0);
  for (std::size_t k = 0; k < plan.split.size(); ++k) {
    const auto& s = plan.split[k];
    plan.materialization_order.push_back({MaterializationEntry::Kind::kEdge, s.edge, k + 1});
    add_vertex(pattern_->edge(s.edge).src, k + 1);
    add_vertex(pattern_->edge(s.edge).dst, k + 1);
    for (EdgeId c : s.covered) {
      plan.materialization_order.push_back({MaterializationEntry::Kind::kEdge, c, k + 1});
      add_vertex(pattern_->edge(c).src, k + 1);
      add_vertex(pattern_->edge(c).dst, k + 1);
    }
  }
  return plan;
}

VertexId choose_start_vertex(const PatternGraph& pattern) {
  VertexId best = 0;
  for (VertexId v = 1; v < pattern.vertex_count(); ++v) {
    if (pattern.total_deg(v) > pattern.total_deg(best)) best = v;
  }
  return best;
}

MatchPlan reduce(const PatternGraph& pattern, const InclusionClosure& closure, ReduceOptions options) {
  if (!pattern.is_connected()) throw PlanError("pattern is not connected");
  ReductionState state(pattern, closure, options);
  const VertexId start = choose_start_vertex(pattern);
  state.schedule(start);
  state.search_split(start);
  while (!state.all_visited()) {
    std::optional<EdgeId> next;
    for (EdgeId e = 0; e < pattern.edge_count() && !next; ++e) {
      const auto& edge = pattern.edge(e);
      if (!state.visited(e) && (state.scheduled(edge.src) || state.scheduled(edge.dst))) next = e;
    }
    if (!next) throw PlanError("pattern is not connected");
    const auto& edge = pattern.edge(*next);
    const VertexId u = pattern.total_deg(edge.src) <= pattern.total_deg(edge.dst) ? edge.dst : edge.src;
    state.search_split(u);
  }
  return std::move(state).finish(start);
}

std::vector<std::string> validate_plan(const PatternGraph& pattern, const InclusionClosure& closure, const MatchPlan& plan) {
  std::vector<std::string> problems;
  const auto m = pattern.edge_count();
  std::vector<int> seen(m, 0);
  for (const auto& s : plan.split) ++seen.at(s.edge);
  for (const auto& r : plan.removed) ++seen.at(r.edge);
  for (EdgeId e = 0; e < m; ++e) {
    if (seen[e] != 1) problems.push_back("edge " + pattern.edge_label(e) + " appears " + std::to_string(seen[e]) + " times");
  }
  if (plan.split.empty()) {
    problems.push_back("empty split");
    return problems;
  }
  if (!pattern.edge(plan.split.front().edge).touches(plan.start)) problems.push_back("first split edge misses start");

  // Position of each edge in the materialization order.
  std::vector<std::ptrdiff_t> pos(m, -1);
  std::vector<std::ptrdiff_t> vpos(pattern.vertex_count(), -1);
  for (std::size_t i = 0; i < plan.materialization_order.size(); ++i) {
    const auto& entry = plan.materialization_order[i];
    auto& slot = entry.kind == MaterializationEntry::Kind::kEdge ? pos.at(entry.id) : vpos.at(entry.id);
    if (slot < 0) slot = static_cast<std::ptrdiff_t>(i);
  }

  std::vector<bool> in_split(m, false);
  for (const auto& s : plan.split) in_split[s.edge] = true;
  for (const auto& r : plan.removed) {
    // Follow the parent chain; it must reach a split edge within m hops.
    EdgeId cur = r.edge;
    std::size_t hops = 0;
    while (!in_split[cur] && hops <= m) {
      auto p = plan.parent(cur);
      if (!p) break;
      cur = *p;
      ++hops;
    }
    if (!in_split[cur]) problems.push_back("parent chain of " + pattern.edge_label(r.edge) + " does not reach the split");
    if (pos[r.parent] < 0 || pos[r.edge] < 0 || pos[r.parent] >= pos[r.edge]) {
      problems.push_back("parent of " + pattern.edge_label(r.edge) + " is not materialized first");
    }
    if (!closure.covers(r.parent, r.edge, r.anchor)) {
      problems.push_back("no inclusion fact justifies " + pattern.edge_label(r.edge) + " <= " + pattern.edge_label(r.parent));
    }
    const auto& root = plan.split.at(r.step);
    if (!root.anchor || *root.anchor != r.anchor) {
      problems.push_back("anchor of " + pattern.edge_label(r.edge) + " is not bound by its root step");
    }
  }
  // An anchor must own a candidate table before its step is explored.
  for (std::size_t k = 0; k < plan.split.size(); ++k) {
    const auto& s = plan.split[k];
    if (!s.anchor) continue;
    const auto first_use = vpos.at(*s.anchor);
    const auto step_pos = pos.at(s.edge);
    if (*s.anchor != plan.start && (first_use < 0 || first_use >= step_pos)) {
      problems.push_back("anchor " + pattern.name(*s.anchor) + " of step " + std::to_string(k + 1) + " has no table yet");
    }
  }
  return problems;
}

std::string format_plan(const PatternGraph& pattern, const InclusionClosure& closure, const MatchPlan& plan) {
  std::ostringstream out;
  out << "START=" << pattern.name(plan.start) << '\n';
  out << "REDUCTION=" << (plan.reduction_enabled ? "on" : "off") << '\n';
  out << "CLOSURE facts=" << closure.edge_facts().size() << (closure.truncated() ? " truncated" : "") << '\n';
  for (const auto& f : closure.edge_facts()) out << format_fact(pattern, f) << '\n';
  out << "SPLIT kept=" << plan.split.size() << '\n';
  for (std::size_t k = 0; k < plan.split.size(); ++k) {
    const auto& s = plan.split[k];
    out << k + 1 << ' ' << pattern.edge_label(s.edge) << " ANCHOR=" << (s.anchor ? pattern.name(*s.anchor) : "-")
        << " COVERS";
    if (s.covered.empty()) out << " -";
    for (EdgeId c : s.covered) out << ' ' << pattern.edge_label(c);
    out << '\n';
  }
  out << "REMOVED count=" << plan.removed.size() << '\n';
  for (const auto& r : plan.removed) {
    out << pattern.edge_label(r.edge) << " PARENT=" << pattern.edge_label(r.parent) << " CTX=<" << pattern.name(r.anchor)
        << ">\n";
  }
  out << "MATERIALIZE\n";
  for (std::size_t i = 0; i < plan.materialization_order.size(); ++i) {
    const auto& entry = plan.materialization_order[i];
    out << i << ' '
        << (entry.kind == MaterializationEntry::Kind::kEdge ? pattern.edge_label(entry.id) : pattern.name(entry.id))
        << " STEP=" << entry.step << '\n';
  }
  return out.str();
}

}  // namespace incmatch
