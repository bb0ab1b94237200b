#include <cmath>
#include <limits>
#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jtapprox/chordal.hpp"
#include "jtapprox/cuts.hpp"
#include "jtapprox/decomp.hpp"
#include "jtapprox/errors.hpp"
#include "jtapprox/generate.hpp"
#include "jtapprox/graph.hpp"
#include "jtapprox/minimize.hpp"
#include "jtapprox/oracle.hpp"
#include "jtapprox/pipeline.hpp"
#include "jtapprox/triangulate.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

using jta::Edge;
using jta::Graph;
using jta::StateSpace;
using jta::Vertex;
using jta::VertexSet;

/// Unit capacities unless overridden; a value of inf marks an uncuttable vertex.
jta::CapacityAssignment capacities(const Graph& g, const std::optional<std::map<Vertex, double>>& caps) {
  auto out = jta::CapacityAssignment::unit(g);
  if (caps) {
    for (const auto& [v, c] : *caps) {
      out.set(v, std::isinf(c) ? jta::Capacity::infinite() : jta::Capacity::finite(c));
    }
  }
  return out;
}

py::object cut_to_python(const std::optional<jta::CutResult>& r) {
  if (!r) return py::none();
  return py::make_tuple(r->cut, r->weight);
}

jta::DecompBudget budget_for(double threshold, double alpha, const StateSpace* ss) {
  jta::DecompBudget b;
  b.threshold = threshold;
  b.alpha = alpha;
  if (ss) b.measure = jta::Measure::weighted(*ss);
  return b;
}

py::dict result_to_python(const jta::TriangulationResult& r) {
  py::dict d;
  d["success"] = r.success();
  d["fill_edges"] = r.fill_edges;
  d["ordering"] = r.ordering;
  d["largest_clique_size"] = r.largest_clique_size;
  d["heaviest_clique_weight"] = r.heaviest_clique_weight;
  d["ratio_bound"] = r.ratio_bound;
  d["trace"] = py::dict("max_w"_a = r.trace.max_w, "depth"_a = r.trace.depth,
                        "partitions"_a = r.trace.partitions, "nodes"_a = r.trace.nodes);
  return d;
}

jta::Mode mode_from(const std::string& mode, bool have_states) {
  if (mode == "card") return jta::Mode::kCardinality;
  if (mode == "weighted") return jta::Mode::kWeighted;
  if (mode == "auto") return have_states ? jta::Mode::kWeighted : jta::Mode::kCardinality;
  throw jta::DomainError("mode must be 'auto', 'card' or 'weighted'");
}

jta::Jump jump_from(const std::string& jump, jta::Mode mode) {
  if (jump == "inc") return jta::Jump::kIncrement;
  if (jump == "kstar") return mode == jta::Mode::kWeighted ? jta::Jump::kWeightedMargin : jta::Jump::kKStar;
  if (jump == "margin") return jta::Jump::kWeightedMargin;
  if (jump == "auto") return mode == jta::Mode::kWeighted ? jta::Jump::kWeightedMargin : jta::Jump::kIncrement;
  throw jta::DomainError("jump must be 'auto', 'inc', 'kstar' or 'margin'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Junction-tree triangulation with a constant-factor clique bound";

  py::register_exception<jta::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<jta::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<jta::OracleRefused>(m, "OracleRefused", PyExc_RuntimeError);
  py::register_exception<jta::InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::vector<Vertex> vertices, std::vector<Edge> edges) {
             return Graph(std::move(vertices), edges);
           }),
           "vertices"_a, "edges"_a = std::vector<Edge>{})
      .def_static(
          "from_edges",
          [](int n, std::vector<Edge> edges) {
            std::vector<Vertex> vs(n);
            for (int i = 0; i < n; ++i) vs[i] = i + 1;
            return Graph(std::move(vs), edges);
          },
          "n"_a, "edges"_a, "Graph on vertices 1..n.")
      .def_property_readonly("vertices", &Graph::vertices)
      .def_property_readonly("edges", &Graph::edges)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("neighbors", [](const Graph& g, Vertex v) {
        auto n = g.neighbors(v);
        return std::vector<Vertex>(n.begin(), n.end());
      })
      .def("adjacent", &Graph::adjacent)
      .def("to_gr", &jta::write_graph)
      .def("__len__", &Graph::num_vertices)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<StateSpace>(m, "StateSpace")
      .def(py::init([](const std::map<Vertex, std::uint64_t>& sizes) {
             StateSpace ss;
             for (const auto& [v, s] : sizes) ss.set(v, s);
             return ss;
           }),
           "sizes"_a)
      .def_static("uniform", &StateSpace::uniform, "graph"_a, "size"_a = 2)
      .def_static("parse", &jta::parse_state_space, "text"_a, "graph"_a)
      .def("size", &StateSpace::size)
      .def("weight", &StateSpace::weight)
      .def_property_readonly("sizes", &StateSpace::sizes)
      .def("to_text", &jta::write_state_space);

  m.def("parse_graph", &jta::parse_graph, "text"_a);

  m.def(
      "strip_simplicial",
      [](const Graph& g) {
        auto s = jta::strip_simplicial(g);
        return py::make_tuple(s.residual, s.removed);
      },
      "graph"_a);

  m.def(
      "min_st_vertex_cut",
      [](const Graph& g, const VertexSet& s, const VertexSet& t,
         const std::optional<std::map<Vertex, double>>& caps) {
        return cut_to_python(jta::min_st_vertex_cut(g, s, t, capacities(g, caps)));
      },
      "graph"_a, "s"_a, "t"_a, "capacities"_a = py::none(),
      "Minimum vertex cut as (cut, weight), or None when uncuttable.");

  m.def(
      "three_way_cut_2approx",
      [](const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c,
         const std::optional<std::map<Vertex, double>>& caps) {
        return cut_to_python(jta::three_way_cut_2approx(g, a, b, c, capacities(g, caps)));
      },
      "graph"_a, "a"_a, "b"_a, "c"_a, "capacities"_a = py::none());

  m.def(
      "optimal_three_way_cut",
      [](const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c,
         const std::optional<std::map<Vertex, double>>& caps) {
        return cut_to_python(jta::optimal_three_way_cut(g, a, b, c, capacities(g, caps)));
      },
      "graph"_a, "a"_a, "b"_a, "c"_a, "capacities"_a = py::none());

  m.def(
      "find_w_decomposition",
      [](const Graph& g, const VertexSet& w, double threshold, double alpha,
         const std::optional<StateSpace>& ss) -> py::object {
        auto r = jta::find_w_decomposition(g, w, budget_for(threshold, alpha, ss ? &*ss : nullptr));
        if (!r.decomposition) return py::none();
        const auto& d = *r.decomposition;
        return py::make_tuple(d.x, d.a, d.b, d.c);
      },
      "graph"_a, "w"_a, "threshold"_a, "alpha"_a = 2.0, "states"_a = py::none(),
      "(X, A, B, C) or None.");

  m.def(
      "is_w_decomposition",
      [](const Graph& g, const std::tuple<VertexSet, VertexSet, VertexSet, VertexSet>& d,
         const VertexSet& w, double threshold, double alpha, const std::optional<StateSpace>& ss) {
        jta::Decomposition dec{std::get<0>(d), std::get<1>(d), std::get<2>(d), std::get<3>(d)};
        return jta::is_w_decomposition(g, dec, w, budget_for(threshold, alpha, ss ? &*ss : nullptr));
      },
      "graph"_a, "decomposition"_a, "w"_a, "threshold"_a, "alpha"_a = 2.0, "states"_a = py::none());

  m.def(
      "triangulate",
      [](const Graph& g, const VertexSet& w, int k, double alpha) {
        return result_to_python(jta::triangulate(g, w, k, alpha));
      },
      "graph"_a, "w"_a, "k"_a, "alpha"_a = 2.0);

  m.def(
      "w_triangulate",
      [](const Graph& g, const VertexSet& w, double threshold, const StateSpace& ss, double alpha) {
        return result_to_python(jta::w_triangulate(g, w, threshold, alpha, ss));
      },
      "graph"_a, "w"_a, "m"_a, "states"_a, "alpha"_a = 2.0);

  m.def(
      "greedy_min_weight",
      [](const Graph& g, const StateSpace& ss) { return result_to_python(jta::greedy_min_weight(g, ss)); },
      "graph"_a, "states"_a);

  m.def(
      "escalate",
      [](const Graph& g, const std::optional<StateSpace>& ss, double alpha, const std::string& jump) {
        const jta::Mode mode = ss ? jta::Mode::kWeighted : jta::Mode::kCardinality;
        jta::EscalationPolicy policy;
        policy.jump = jump_from(jump, mode);
        auto r = jta::escalate(g, alpha, policy, ss ? &*ss : nullptr);
        py::dict d = result_to_python(r.result);
        d["threshold"] = r.threshold;
        d["last_failed"] = r.last_failed;
        d["lower_bound"] = r.lower_bound;
        d["rounds"] = r.rounds;
        return d;
      },
      "graph"_a, "states"_a = py::none(), "alpha"_a = 2.0, "jump"_a = "auto");

  m.def(
      "minimize_fill",
      [](const Graph& g, const jta::EdgeSet& fills, const std::vector<Vertex>& ordering) {
        auto r = jta::minimize_fill(g, fills, ordering);
        return py::dict("removed"_a = r.removed, "kept"_a = r.kept, "passes"_a = r.passes);
      },
      "graph"_a, "fills"_a, "ordering"_a);

  m.def(
      "check_chordal",
      [](const Graph& g) {
        auto c = jta::check_chordal(g);
        return py::dict("chordal"_a = c.chordal(), "elimination_order"_a = c.elimination_order,
                        "chordless_cycle"_a = c.chordless_cycle);
      },
      "graph"_a);

  m.def("exact_cliquewidth", [](const Graph& g) { return jta::exact_cliquewidth(g); }, "graph"_a);
  m.def(
      "exact_weighted_cliquewidth",
      [](const Graph& g, const StateSpace& ss) { return jta::exact_weighted_cliquewidth(g, ss); },
      "graph"_a, "states"_a);

  m.def(
      "run_pipeline",
      [](const Graph& g, const std::optional<StateSpace>& ss, const std::string& mode,
         const std::string& jump, double alpha, bool minimize, bool force_tree) {
        jta::PipelineOptions opts;
        opts.alpha = alpha;
        opts.mode = mode_from(mode, ss.has_value());
        opts.jump = jump_from(jump, opts.mode);
        opts.minimize = minimize;
        opts.force_tree = force_tree;
        const auto report = jta::run_pipeline(g, ss ? &*ss : nullptr, opts);
        py::dict d = py::module_::import("json").attr("loads")(jta::report_json(report, -1));
        d["fills"] = report.fills;
        d["bags"] = report.tree.bags;
        d["tree_edges"] = report.tree.edges;
        d["td"] = jta::write_td(report.tree, g.num_vertices());
        return d;
      },
      "graph"_a, "states"_a = py::none(), "mode"_a = "auto", "jump"_a = "auto", "alpha"_a = 2.0,
      "minimize"_a = true, "force_tree"_a = false,
      "Full pipeline; returns the JSON report fields plus fills, bags, tree_edges and td text.");

  m.def(
      "random_instance",
      [](int n, std::size_t edges, std::uint64_t seed, std::uint64_t lo, std::uint64_t hi,
         std::optional<double> mean) {
        std::mt19937_64 rng(seed);
        Graph g = jta::random_graph(n, edges, rng);
        StateSpace ss = jta::random_state_space(g, jta::SizeRange{lo, hi, mean}, rng);
        return py::make_tuple(g, ss);
      },
      "n"_a, "m"_a, "seed"_a = 1, "lo"_a = 3, "hi"_a = 21, "mean"_a = 6.0);
}
