#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace incmatch {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct PatternEdge {
  VertexId src;
  VertexId dst;

  VertexId other(VertexId v) const noexcept { return v == src ? dst : src; }
  bool touches(VertexId v) const noexcept { return v == src || v == dst; }
  friend bool operator==(const PatternEdge&, const PatternEdge&) = default;
};

// Per-vertex degree thresholds. A data node can host the vertex only if both
// of its degrees reach these values.
struct DegreeBound {
  std::uint32_t in = 0;
  std::uint32_t out = 0;

  std::uint32_t total() const noexcept { return in + out; }
  bool admits(std::uint32_t node_in, std::uint32_t node_out) const noexcept { return node_in >= in && node_out >= out; }
  friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

// Small directed pattern. Vertices are numbered in order of first appearance
// in the edge list; edges keep file order, and that order is the tie-breaker
// everywhere downstream.
class PatternGraph {
 public:
  PatternGraph() = default;

  // Throws ParseError on duplicate edges, self-loops or an empty edge list.
  PatternGraph(std::vector<std::string> names, std::vector<PatternEdge> edges);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<PatternEdge>& edges() const noexcept { return edges_; }
  const PatternEdge& edge(EdgeId e) const { return edges_.at(e); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const;

  const DegreeBound& degree(VertexId v) const { return degrees_.at(v); }
  std::uint32_t in_deg(VertexId v) const { return degrees_.at(v).in; }
  std::uint32_t out_deg(VertexId v) const { return degrees_.at(v).out; }
  std::uint32_t total_deg(VertexId v) const { return degrees_.at(v).total(); }

  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_edges_.at(v); }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_edges_.at(v); }
  // In-edges followed by out-edges, each group in edge order.
  std::vector<EdgeId> incident_edges(VertexId v) const;

  bool is_connected() const;

  // "(a,b)" using vertex names.
  std::string edge_label(EdgeId e) const;

 private:
  std::vector<std::string> names_;
  std::vector<PatternEdge> edges_;
  std::vector<DegreeBound> degrees_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::vector<std::vector<EdgeId>> out_edges_;
};

// One "src dst" edge per line, alphanumeric vertex names, '#'/'%' comments.
PatternGraph parse_pattern(std::istream& in);
PatternGraph parse_pattern(std::string_view text);
PatternGraph parse_pattern_file(const std::filesystem::path& path);

// Builds a pattern from index pairs; vertices are named v0, v1, ...
PatternGraph pattern_from_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs);

constexpr std::size_t kMaxAutomorphismVertices = 12;

// Number of vertex permutations that map the edge set onto itself.
// Throws CapacityError above kMaxAutomorphismVertices.
std::uint64_t automorphism_count(const PatternGraph& pattern);

}  // namespace incmatch
