#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incmatch/pattern.hpp"

namespace incmatch {

// u ⪰ v: every data node passing u's degree filter also passes v's.
// Componentwise on (in, out); total degree alone would not imply it.
bool dominates(const PatternGraph& pattern, VertexId u, VertexId v);

enum class InclusionLevel : std::uint8_t {
  kRaw,     // arc tables before any endpoint degree filter
  kDegree,  // arc tables after both endpoint degree filters
};

enum class FactOrigin : std::uint8_t {
  kSibling,            // two edges sharing an endpoint
  kUniversal,          // any two edges, no context: both range over all arcs
  kEndpointDominance,  // both endpoints of the included edge dominate
  kPropagated,         // extended along paths from a premise
};

// `included` ⊑ `includer`. A context is a vertex path: a single vertex is the
// shared anchor of two sibling edges, an empty path means no context, and a
// longer path is the walk the edge's table was extended along.
struct EdgeInclusion {
  EdgeId included = 0;
  EdgeId includer = 0;
  std::vector<VertexId> included_context;
  std::vector<VertexId> includer_context;
  InclusionLevel level = InclusionLevel::kRaw;
  FactOrigin origin = FactOrigin::kSibling;
  // Index of the fact this one was propagated from; -1 for base facts and for
  // facts propagated from the identity e ⊑ e.
  std::int32_t premise = -1;

  bool is_sibling() const noexcept { return origin == FactOrigin::kSibling; }
  VertexId anchor() const { return included_context.front(); }
};

// included^{(included_under)} ⊑ includer^{(includer_under)}
struct VertexInclusion {
  VertexId included = 0;
  EdgeId included_under = 0;
  VertexId includer = 0;
  EdgeId includer_under = 0;
};

struct BaseFacts {
  std::vector<EdgeInclusion> edges;
  std::vector<VertexInclusion> vertices;
};

// Pairs of edges sharing a destination (or a source) anchored at the shared
// vertex. Raw facts hold in both directions; degree facts only when the far
// endpoint of the included edge dominates the includer's. Sorted by
// (includer, included, level).
BaseFacts sibling_inclusions(const PatternGraph& pattern);

struct ClosureLimits {
  std::size_t max_facts = 100000;
};

class InclusionClosure {
 public:
  InclusionClosure() = default;
  InclusionClosure(const PatternGraph& pattern, std::vector<EdgeInclusion> facts,
                   std::vector<VertexInclusion> vertex_facts, bool truncated);

  const std::vector<EdgeInclusion>& edge_facts() const noexcept { return facts_; }
  const std::vector<VertexInclusion>& vertex_facts() const noexcept { return vertex_facts_; }
  // Propagation stopped at ClosureLimits::max_facts.
  bool truncated() const noexcept { return truncated_; }

  // Edges `includer` covers as a degree-level sibling anchored at `anchor`.
  const std::vector<EdgeId>& covered_at(EdgeId includer, VertexId anchor) const;
  bool covers(EdgeId includer, EdgeId included, VertexId anchor) const;

  // I^c(e): every edge included by `includer` under some context.
  std::vector<EdgeId> inclusion_set(EdgeId includer) const;

 private:
  std::vector<EdgeInclusion> facts_;
  std::vector<VertexInclusion> vertex_facts_;
  bool truncated_ = false;
  std::size_t vertex_count_ = 0;
  // [includer * vertex_count + anchor] -> included edges, ascending.
  std::vector<std::vector<EdgeId>> sibling_cover_;
};

// Fixpoint over path extension: from e1 ⊑ e3, every out-edge e2 of e1's head
// and e4 of e3's head gives e2 ⊑ e4 under the extended contexts. Degree-level
// facts additionally require head(e2) ⪰ head(e4). Contexts never repeat an
// edge, which bounds them by the edge count.
InclusionClosure propagate_closure(const PatternGraph& pattern, const BaseFacts& base, ClosureLimits limits = {});

inline InclusionClosure compute_closure(const PatternGraph& pattern, ClosureLimits limits = {}) {
  return propagate_closure(pattern, sibling_inclusions(pattern), limits);
}

// "INCL <included> <includer> CTX <path>[|<path>] RAW|DEG"
std::string format_fact(const PatternGraph& pattern, const EdgeInclusion& fact);

}  // namespace incmatch
