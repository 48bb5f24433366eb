#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "incmatch/digraph.hpp"
#include "incmatch/errors.hpp"
#include "incmatch/generators.hpp"

using namespace incmatch;

TEST_CASE("from_arcs sorts and deduplicates") {
  const DataGraph g = DataGraph::from_arcs(3, {{2, 0}, {0, 1}, {0, 1}, {0, 2}});
  CHECK(g.node_count() == 3);
  CHECK(g.arc_count() == 3);
  CHECK(g.out_degree(0) == 2);
  CHECK(g.in_degree(0) == 1);
  const auto out0 = g.out_arcs(0);
  CHECK(std::vector<NodeId>(out0.begin(), out0.end()) == std::vector<NodeId>{1, 2});
  CHECK(g.has_arc(2, 0));
  CHECK_FALSE(g.has_arc(0, 0));
  CHECK_THROWS_AS(DataGraph::from_arcs(2, {{0, 2}}), UsageError);
}

TEST_CASE("arcs() rejects unknown nodes") {
  const DataGraph g = DataGraph::from_arcs(2, {{0, 1}});
  CHECK(g.arcs(1, Direction::kIn).size() == 1);
  CHECK_THROWS_AS(g.arcs(5, Direction::kOut), UsageError);
}

TEST_CASE("forward and reverse adjacency agree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DataGraph g = random_digraph(15, 0.2, seed);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.out_arcs(u)) {
        const auto in = g.in_arcs(v);
        CHECK(std::binary_search(in.begin(), in.end(), u));
      }
      for (NodeId v : g.in_arcs(u)) CHECK(g.has_arc(v, u));
    }
  }
}

TEST_CASE("edge list loading remaps ids and skips comments") {
  const DataGraph g = load_edge_list("# header\n10 30\n% other\n30 20\n\n10 20\n");
  CHECK(g.node_count() == 3);
  CHECK(g.arc_count() == 3);
  CHECK(g.original_id(0) == 10);
  CHECK(g.original_id(1) == 20);
  CHECK(g.original_id(2) == 30);
  CHECK(g.has_arc(0, 2));
  CHECK(g.has_arc(2, 1));
}

TEST_CASE("edge list errors carry the line number") {
  try {
    load_edge_list("0 1\n1 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_edge_list("0\n"), ParseError);
  CHECK_THROWS_AS(load_edge_list_file("/nonexistent/graph.txt"), ParseError);
}

TEST_CASE("text and binary round trips") {
  const DataGraph g = load_edge_list("5 7\n7 9\n9 5\n5 9\n");
  std::stringstream text;
  write_edge_list(text, g);
  const DataGraph t = load_edge_list(text);
  CHECK(t.arc_list() == g.arc_list());

  std::stringstream bin;
  save_binary(bin, g);
  const DataGraph b = load_binary(bin);
  CHECK(b.arc_list() == g.arc_list());
  CHECK(b.original_ids() == g.original_ids());

  std::stringstream bad("IMDG");
  CHECK_THROWS_AS(load_binary(bad), ParseError);
}
