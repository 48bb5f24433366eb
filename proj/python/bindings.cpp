#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incmatch/errors.hpp"
#include "incmatch/executor.hpp"
#include "incmatch/inclusion.hpp"
#include "incmatch/oracle.hpp"
#include "incmatch/reducer.hpp"

namespace py = pybind11;
using namespace incmatch;

namespace {

DataGraph graph_from_pairs(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::string text;
  for (const auto& [u, v] : pairs) text += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return load_edge_list(text);
}

py::dict stats_dict(const MatchStats& s) {
  py::dict d;
  d["adjacency_reads"] = s.adjacency_reads;
  d["adjacency_reads_removed"] = s.adjacency_reads_removed;
  d["peak_tuples"] = s.peak_tuples;
  d["explore_calls"] = s.explore_calls;
  d["leaves"] = s.leaf.leaves;
  d["shortcut_leaves"] = s.leaf.shortcut_leaves;
  d["shortcut_mismatches"] = s.leaf.shortcut_mismatches;
  d["wall_time_ms"] = s.wall_time_ms;
  d["threads"] = s.threads;
  return d;
}

py::dict do_match(const DataGraph& graph, const PatternGraph& pattern, const std::string& mode, unsigned threads,
                  bool reduction, bool occurrences, bool verify_shortcut) {
  if (mode != "count" && mode != "enumerate") throw UsageError("mode must be 'count' or 'enumerate'");
  RunOptions options;
  options.mode = mode == "count" ? MatchMode::kCount : MatchMode::kEnumerate;
  options.threads = threads;
  options.with_occurrences = occurrences;
  options.verify_shortcut = verify_shortcut;
  MatchResult r;
  {
    py::gil_scoped_release release;
    r = match(pattern, graph, options, {reduction});
  }
  py::dict d;
  d["embeddings"] = r.embedding_count;
  d["occurrences"] = r.occurrence_count ? py::cast(*r.occurrence_count) : py::none();
  d["stats"] = stats_dict(r.stats);
  if (options.mode == MatchMode::kEnumerate) {
    std::sort(r.embeddings.begin(), r.embeddings.end());
    py::list rows;
    for (const auto& tuple : r.embeddings) {
      py::dict row;
      for (VertexId v = 0; v < tuple.size(); ++v) row[py::str(pattern.name(v))] = graph.original_id(tuple[v]);
      rows.append(row);
    }
    d["matches"] = rows;
  }
  return d;
}

py::dict do_plan(const PatternGraph& pattern, bool reduction) {
  const InclusionClosure closure = compute_closure(pattern);
  const MatchPlan plan = reduce(pattern, closure, {reduction});
  py::list split;
  for (const auto& s : plan.split) split.append(pattern.edge_label(s.edge));
  py::dict removed;
  for (const auto& r : plan.removed) removed[py::str(pattern.edge_label(r.edge))] = pattern.edge_label(r.parent);
  py::dict d;
  d["start"] = pattern.name(plan.start);
  d["split"] = split;
  d["removed"] = removed;
  d["text"] = format_plan(pattern, closure, plan);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directed subgraph matching with constraint-inclusion reduction";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PlanError>(m, "PlanError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<DataGraph>(m, "DataGraph")
      .def_static("from_edges", &graph_from_pairs, py::arg("edges"))
      .def_static("load", [](const std::string& path) { return load_edge_list_file(path); }, py::arg("path"))
      .def_property_readonly("node_count", &DataGraph::node_count)
      .def_property_readonly("arc_count", &DataGraph::arc_count)
      .def("__repr__", [](const DataGraph& g) {
        return "<DataGraph nodes=" + std::to_string(g.node_count()) + " arcs=" + std::to_string(g.arc_count()) + ">";
      });

  py::class_<PatternGraph>(m, "Pattern")
      .def_static("parse", [](const std::string& text) { return parse_pattern(std::string_view(text)); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return parse_pattern_file(path); }, py::arg("path"))
      .def_property_readonly("vertex_count", &PatternGraph::vertex_count)
      .def_property_readonly("edge_count", &PatternGraph::edge_count)
      .def_property_readonly("names", &PatternGraph::names)
      .def("automorphisms", [](const PatternGraph& p) { return automorphism_count(p); });

  m.def("match", &do_match, py::arg("graph"), py::arg("pattern"), py::arg("mode") = "count", py::arg("threads") = 1,
        py::arg("reduction") = true, py::arg("occurrences") = false, py::arg("verify_shortcut") = false);
  m.def("plan", &do_plan, py::arg("pattern"), py::arg("reduction") = true);
  m.def(
      "oracle_count",
      [](const DataGraph& g, const PatternGraph& p) { return enumerate_bruteforce(g, p).embedding_count; },
      py::arg("graph"), py::arg("pattern"));
}
