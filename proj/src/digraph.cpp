#include "incmatch/digraph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "incmatch/errors.hpp"

namespace incmatch {

namespace {

void build_csr(std::size_t node_count, const std::vector<Arc>& sorted_arcs, bool by_src,
               std::vector<std::uint32_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(node_count + 1, 0);
  for (const Arc& a : sorted_arcs) ++offsets[(by_src ? a.src : a.dst) + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
  targets.resize(sorted_arcs.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  // Input sorted by (src, dst): both directions come out sorted.
  for (const Arc& a : sorted_arcs) {
    const NodeId key = by_src ? a.src : a.dst;
    targets[cursor[key]++] = by_src ? a.dst : a.src;
  }
}

bool is_comment_or_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

std::uint64_t parse_id(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("expected a non-negative integer node id, got '" + std::string(token) + "'", line_no);
  }
  return value;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ParseError("binary graph cache is truncated");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

constexpr std::array<char, 4> kMagic{'I', 'M', 'D', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

}  // namespace

DataGraph DataGraph::from_arcs(std::size_t node_count, std::vector<Arc> arcs,
                               std::vector<std::uint64_t> original_ids) {
  for (const Arc& a : arcs) {
    if (a.src >= node_count || a.dst >= node_count) throw UsageError("arc endpoint outside node range");
  }
  if (original_ids.empty()) {
    original_ids.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) original_ids[i] = i;
  } else if (original_ids.size() != node_count) {
    throw UsageError("original id table size does not match node count");
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  DataGraph g;
  build_csr(node_count, arcs, true, g.out_offsets_, g.out_targets_);
  build_csr(node_count, arcs, false, g.in_offsets_, g.in_sources_);
  g.original_ids_ = std::move(original_ids);
  return g;
}

std::span<const NodeId> DataGraph::arcs(NodeId node, Direction direction) const {
  if (node >= node_count()) {
    throw UsageError("node " + std::to_string(node) + " out of range (node_count=" + std::to_string(node_count()) + ")");
  }
  return direction == Direction::kOut ? out_arcs(node) : in_arcs(node);
}

bool DataGraph::has_arc(NodeId src, NodeId dst) const noexcept {
  const auto outs = out_arcs(src);
  return std::binary_search(outs.begin(), outs.end(), dst);
}

std::vector<Arc> DataGraph::arc_list() const {
  std::vector<Arc> result;
  result.reserve(arc_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : out_arcs(u)) result.push_back({u, v});
  }
  return result;
}

DataGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream tokens(line);
    std::string a;
    std::string b;
    if (!(tokens >> a >> b)) throw ParseError("expected two node ids", line_no);
    raw.emplace_back(parse_id(a, line_no), parse_id(b, line_no));
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [s, d] : raw) {
    ids.push_back(s);
    ids.push_back(d);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto dense = [&ids](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const auto& [s, d] : raw) arcs.push_back({dense(s), dense(d)});
  const std::size_t n = ids.size();
  return DataGraph::from_arcs(n, std::move(arcs), std::move(ids));
}

DataGraph load_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

DataGraph load_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path.string());
  try {
    return load_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const DataGraph& graph) {
  for (const Arc& a : graph.arc_list()) out << graph.original_id(a.src) << ' ' << graph.original_id(a.dst) << '\n';
}

void save_binary(std::ostream& out, const DataGraph& graph) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint64_t>(out, graph.node_count());
  put_le<std::uint64_t>(out, graph.arc_count());
  for (std::uint64_t id : graph.original_ids()) put_le<std::uint64_t>(out, id);
  for (const Arc& a : graph.arc_list()) {
    put_le<std::uint32_t>(out, a.src);
    put_le<std::uint32_t>(out, a.dst);
  }
}

DataGraph load_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ParseError("not a binary graph cache (bad magic)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kBinaryVersion) throw ParseError("unsupported binary graph cache version " + std::to_string(version));
  const auto n = get_le<std::uint64_t>(in);
  const auto m = get_le<std::uint64_t>(in);
  std::vector<std::uint64_t> ids(n);
  for (auto& id : ids) id = get_le<std::uint64_t>(in);
  std::vector<Arc> arcs(m);
  for (auto& a : arcs) {
    a.src = get_le<std::uint32_t>(in);
    a.dst = get_le<std::uint32_t>(in);
  }
  return DataGraph::from_arcs(n, std::move(arcs), std::move(ids));
}

}  // namespace incmatch
