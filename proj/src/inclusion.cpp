#include "incmatch/inclusion.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace incmatch {

namespace {

using Path = std::vector<VertexId>;

// Vertex path of `edge` appended to its context.
Path extend(const Path& context, const PatternEdge& edge) {
  if (context.size() <= 1) return {edge.src, edge.dst};
  Path p = context;
  p.push_back(edge.dst);
  return p;
}

bool path_uses(const Path& path, const PatternEdge& edge) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == edge.src && path[i + 1] == edge.dst) return true;
  }
  return false;
}

std::string format_path(const PatternGraph& pattern, const Path& path) {
  std::string s = "<";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ',';
    s += pattern.name(path[i]);
  }
  return s + ">";
}

void add_sibling_group(const PatternGraph& pattern, VertexId anchor, const std::vector<EdgeId>& group, BaseFacts& out) {
  for (EdgeId e1 : group) {
    for (EdgeId e2 : group) {
      if (e1 == e2) continue;
      const VertexId far1 = pattern.edge(e1).other(anchor);
      const VertexId far2 = pattern.edge(e2).other(anchor);
      out.edges.push_back({e1, e2, {anchor}, {anchor}, InclusionLevel::kRaw, FactOrigin::kSibling, -1});
      if (dominates(pattern, far1, far2)) {
        out.edges.push_back({e1, e2, {anchor}, {anchor}, InclusionLevel::kDegree, FactOrigin::kSibling, -1});
        out.vertices.push_back({far1, e1, far2, e2});
      }
    }
  }
}

}  // namespace

bool dominates(const PatternGraph& pattern, VertexId u, VertexId v) {
  const auto& du = pattern.degree(u);
  const auto& dv = pattern.degree(v);
  return du.in >= dv.in && du.out >= dv.out;
}

BaseFacts sibling_inclusions(const PatternGraph& pattern) {
  BaseFacts facts;
  for (VertexId v = 0; v < pattern.vertex_count(); ++v) {
    add_sibling_group(pattern, v, pattern.in_edges(v), facts);
    add_sibling_group(pattern, v, pattern.out_edges(v), facts);
  }
  std::stable_sort(facts.edges.begin(), facts.edges.end(), [](const EdgeInclusion& a, const EdgeInclusion& b) {
    return std::tie(a.includer, a.included, a.level) < std::tie(b.includer, b.included, b.level);
  });
  std::stable_sort(facts.vertices.begin(), facts.vertices.end(), [](const VertexInclusion& a, const VertexInclusion& b) {
    return std::tie(a.includer_under, a.included_under) < std::tie(b.includer_under, b.included_under);
  });
  return facts;
}

InclusionClosure::InclusionClosure(const PatternGraph& pattern, std::vector<EdgeInclusion> facts,
                                   std::vector<VertexInclusion> vertex_facts, bool truncated)
    : facts_(std::move(facts)),
      vertex_facts_(std::move(vertex_facts)),
      truncated_(truncated),
      vertex_count_(pattern.vertex_count()),
      sibling_cover_(pattern.edge_count() * pattern.vertex_count()) {
  for (const auto& f : facts_) {
    if (f.is_sibling() && f.level == InclusionLevel::kDegree) {
      sibling_cover_[f.includer * vertex_count_ + f.anchor()].push_back(f.included);
    }
  }
  for (auto& list : sibling_cover_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

const std::vector<EdgeId>& InclusionClosure::covered_at(EdgeId includer, VertexId anchor) const {
  return sibling_cover_.at(includer * vertex_count_ + anchor);
}

bool InclusionClosure::covers(EdgeId includer, EdgeId included, VertexId anchor) const {
  const auto& list = covered_at(includer, anchor);
  return std::binary_search(list.begin(), list.end(), included);
}

std::vector<EdgeId> InclusionClosure::inclusion_set(EdgeId includer) const {
  std::vector<EdgeId> result;
  for (const auto& f : facts_) {
    if (f.includer == includer && f.level == InclusionLevel::kDegree) result.push_back(f.included);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

InclusionClosure propagate_closure(const PatternGraph& pattern, const BaseFacts& base, ClosureLimits limits) {
  using Key = std::tuple<EdgeId, EdgeId, Path, Path, InclusionLevel>;
  std::vector<EdgeInclusion> facts;
  std::set<Key> seen;
  bool truncated = false;

  auto add = [&](EdgeInclusion fact) {
    if (facts.size() >= limits.max_facts) {
      truncated = true;
      return;
    }
    Key key{fact.included, fact.includer, fact.included_context, fact.includer_context, fact.level};
    if (seen.insert(std::move(key)).second) facts.push_back(std::move(fact));
  };

  for (const auto& f : base.edges) add(f);

  const auto m = static_cast<EdgeId>(pattern.edge_count());
  for (EdgeId e1 = 0; e1 < m; ++e1) {
    for (EdgeId e3 = 0; e3 < m; ++e3) {
      if (e1 == e3) continue;
      add({e1, e3, {}, {}, InclusionLevel::kRaw, FactOrigin::kUniversal, -1});
      const auto& a = pattern.edge(e1);
      const auto& b = pattern.edge(e3);
      if (dominates(pattern, a.src, b.src) && dominates(pattern, a.dst, b.dst)) {
        add({e1, e3, {}, {}, InclusionLevel::kDegree, FactOrigin::kEndpointDominance, -1});
      }
    }
  }

  // One propagation step from premise e1 ⊑ e3.
  auto step = [&](EdgeId e1, EdgeId e3, const Path& c1, const Path& c3, InclusionLevel level, std::int32_t premise) {
    const auto& edge1 = pattern.edge(e1);
    const auto& edge3 = pattern.edge(e3);
    const Path p1 = extend(c1, edge1);
    const Path p3 = extend(c3, edge3);
    for (EdgeId e2 : pattern.out_edges(edge1.dst)) {
      const auto& edge2 = pattern.edge(e2);
      if (e2 == e1 || path_uses(p1, edge2)) continue;
      for (EdgeId e4 : pattern.out_edges(edge3.dst)) {
        const auto& edge4 = pattern.edge(e4);
        if (e4 == e3 || path_uses(p3, edge4)) continue;
        if (e2 == e4 && p1 == p3) continue;
        if (level == InclusionLevel::kDegree && !dominates(pattern, edge2.dst, edge4.dst)) continue;
        add({e2, e4, p1, p3, level, FactOrigin::kPropagated, premise});
      }
    }
  };

  // The identity e ⊑ e is a premise but never stored as a fact.
  for (EdgeId e = 0; e < m; ++e) {
    step(e, e, {}, {}, InclusionLevel::kRaw, -1);
    step(e, e, {}, {}, InclusionLevel::kDegree, -1);
  }
  for (std::size_t i = 0; i < facts.size() && !truncated; ++i) {
    const EdgeInclusion f = facts[i];
    step(f.included, f.includer, f.included_context, f.includer_context, f.level, static_cast<std::int32_t>(i));
  }

  return InclusionClosure(pattern, std::move(facts), base.vertices, truncated);
}

std::string format_fact(const PatternGraph& pattern, const EdgeInclusion& fact) {
  std::string ctx = format_path(pattern, fact.included_context);
  if (fact.includer_context != fact.included_context) ctx += "|" + format_path(pattern, fact.includer_context);
  return "INCL " + pattern.edge_label(fact.included) + " " + pattern.edge_label(fact.includer) + " CTX " + ctx +
         (fact.level == InclusionLevel::kDegree ? " DEG" : " RAW");
}

}  // namespace incmatch
