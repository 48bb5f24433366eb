#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace incmatch {

using NodeId = std::uint32_t;

enum class Direction { kOut, kIn };

struct Arc {
  NodeId src;
  NodeId dst;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Immutable directed graph stored as two CSR arrays (forward and reverse).
// Node ids are dense 0..n-1; the ids found in the input are kept in
// `original_id()` for output.
class DataGraph {
 public:
  DataGraph() = default;

  // Builds a graph over `node_count` dense nodes. Arcs are sorted and
  // deduplicated. `original_ids` may be empty (identity mapping).
  static DataGraph from_arcs(std::size_t node_count, std::vector<Arc> arcs,
                             std::vector<std::uint64_t> original_ids = {});

  std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t arc_count() const noexcept { return out_targets_.size(); }

  // Sorted neighbor list; throws UsageError for an out-of-range node.
  std::span<const NodeId> arcs(NodeId node, Direction direction) const;
  std::span<const NodeId> out_arcs(NodeId node) const noexcept {
    return {out_targets_.data() + out_offsets_[node], out_targets_.data() + out_offsets_[node + 1]};
  }
  std::span<const NodeId> in_arcs(NodeId node) const noexcept {
    return {in_sources_.data() + in_offsets_[node], in_sources_.data() + in_offsets_[node + 1]};
  }

  std::uint32_t out_degree(NodeId node) const noexcept { return out_offsets_[node + 1] - out_offsets_[node]; }
  std::uint32_t in_degree(NodeId node) const noexcept { return in_offsets_[node + 1] - in_offsets_[node]; }

  bool has_arc(NodeId src, NodeId dst) const noexcept;

  std::uint64_t original_id(NodeId node) const noexcept { return original_ids_[node]; }
  const std::vector<std::uint64_t>& original_ids() const noexcept { return original_ids_; }

  // All arcs in (src, dst) order.
  std::vector<Arc> arc_list() const;

 private:
  std::vector<std::uint32_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<std::uint64_t> original_ids_;
};

// Whitespace separated "src dst" arc list. Lines starting with '#' or '%' are
// comments. Ids need not be contiguous; they are remapped to 0..n-1 in
// ascending order. Throws ParseError naming the offending line.
DataGraph load_edge_list(std::istream& in);
DataGraph load_edge_list(std::string_view text);
DataGraph load_edge_list_file(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const DataGraph& graph);

// Binary cache: "IMDG" magic, u32 version, u64 node/arc counts, then the
// original ids and the forward arc list. All integers little-endian.
void save_binary(std::ostream& out, const DataGraph& graph);
DataGraph load_binary(std::istream& in);

}  // namespace incmatch
