#include "incmatch/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "incmatch/errors.hpp"

namespace incmatch {

namespace {

bool is_comment_or_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

bool valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

}  // namespace

PatternGraph::PatternGraph(std::vector<std::string> names, std::vector<PatternEdge> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  if (edges_.empty()) throw ParseError("pattern has no edges");
  const auto n = names_.size();
  degrees_.assign(n, {});
  in_edges_.assign(n, {});
  out_edges_.assign(n, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto [s, d] = edges_[e];
    if (s >= n || d >= n) throw ParseError("edge endpoint outside vertex range");
    if (s == d) throw ParseError("self-loop on vertex '" + names_[s] + "'");
    for (EdgeId prev : out_edges_[s]) {
      if (edges_[prev].dst == d) throw ParseError("duplicate edge " + edge_label(e));
    }
    ++degrees_[s].out;
    ++degrees_[d].in;
    out_edges_[s].push_back(e);
    in_edges_[d].push_back(e);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (degrees_[v].total() == 0) throw ParseError("vertex '" + names_[v] + "' has no edges");
  }
}

std::optional<VertexId> PatternGraph::find_vertex(std::string_view name) const {
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<EdgeId> PatternGraph::find_edge(VertexId src, VertexId dst) const {
  if (src >= vertex_count()) return std::nullopt;
  for (EdgeId e : out_edges_[src]) {
    if (edges_[e].dst == dst) return e;
  }
  return std::nullopt;
}

std::vector<EdgeId> PatternGraph::incident_edges(VertexId v) const {
  std::vector<EdgeId> result = in_edges_.at(v);
  result.insert(result.end(), out_edges_.at(v).begin(), out_edges_.at(v).end());
  return result;
}

bool PatternGraph::is_connected() const {
  if (names_.empty()) return true;
  std::vector<bool> seen(names_.size(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident_edges(v)) {
      const VertexId w = edges_[e].other(v);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == names_.size();
}

std::string PatternGraph::edge_label(EdgeId e) const {
  const auto& edge = edges_.at(e);
  return "(" + names_.at(edge.src) + "," + names_.at(edge.dst) + ")";
}

PatternGraph parse_pattern(std::istream& in) {
  std::vector<std::string> names;
  std::vector<PatternEdge> edges;
  auto intern = [&names](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<VertexId>(it - names.begin());
    names.push_back(name);
    return static_cast<VertexId>(names.size() - 1);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream tokens(line);
    std::string a;
    std::string b;
    if (!(tokens >> a >> b)) throw ParseError("expected two vertex names", line_no);
    if (!valid_name(a) || !valid_name(b)) throw ParseError("vertex names must be alphanumeric", line_no);
    if (a == b) throw ParseError("self-loop on vertex '" + a + "'", line_no);
    const VertexId s = intern(a);
    const VertexId d = intern(b);
    const PatternEdge edge{s, d};
    if (std::find(edges.begin(), edges.end(), edge) != edges.end()) {
      throw ParseError("duplicate edge (" + a + "," + b + ")", line_no);
    }
    edges.push_back(edge);
  }
  if (edges.empty()) throw ParseError("pattern has no edges");
  return PatternGraph(std::move(names), std::move(edges));
}

PatternGraph parse_pattern(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pattern(in);
}

PatternGraph parse_pattern_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pattern file " + path.string());
  try {
    return parse_pattern(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

PatternGraph pattern_from_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<VertexId> order;
  auto intern = [&order](VertexId v) {
    auto it = std::find(order.begin(), order.end(), v);
    if (it != order.end()) return static_cast<VertexId>(it - order.begin());
    order.push_back(v);
    return static_cast<VertexId>(order.size() - 1);
  };
  std::vector<PatternEdge> edges;
  edges.reserve(pairs.size());
  for (const auto& [s, d] : pairs) {
    const VertexId a = intern(s);
    const VertexId b = intern(d);
    edges.push_back({a, b});
  }
  std::vector<std::string> names;
  for (VertexId v : order) names.push_back("v" + std::to_string(v));
  return PatternGraph(std::move(names), std::move(edges));
}

std::uint64_t automorphism_count(const PatternGraph& pattern) {
  const auto n = pattern.vertex_count();
  if (n > kMaxAutomorphismVertices) {
    throw CapacityError("automorphism search limited to " + std::to_string(kMaxAutomorphismVertices) + " vertices");
  }
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : pattern.edges()) adj[e.src][e.dst] = true;

  // Extend a partial permutation vertex by vertex; every prefix must preserve
  // degrees and adjacency among the assigned vertices in both directions.
  std::vector<VertexId> image(n);
  std::vector<bool> used(n, false);
  std::uint64_t count = 0;
  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      ++count;
      return;
    }
    for (VertexId t = 0; t < n; ++t) {
      if (used[t] || !(pattern.degree(t) == pattern.degree(static_cast<VertexId>(k)))) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        ok = adj[k][j] == adj[t][image[j]] && adj[j][k] == adj[image[j]][t];
      }
      if (!ok) continue;
      used[t] = true;
      image[k] = t;
      self(self, k + 1);
      used[t] = false;
    }
  };
  extend(extend, 0);
  return count;
}

}  // namespace incmatch
