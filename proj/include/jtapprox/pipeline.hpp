#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jtapprox/chordal.hpp"
#include "jtapprox/graph.hpp"
#include "jtapprox/triangulate.hpp"

namespace jta {

enum class Mode { kCardinality, kWeighted };

struct PipelineOptions {
  double alpha = 2.0;
  Mode mode = Mode::kCardinality;
  Jump jump = Jump::kIncrement;
  bool minimize = true;
  /// Join the per-component trees into a single tree.
  bool force_tree = false;
  bool check_nodes = false;
};

struct ComponentReport {
  VertexSet vertices;
  double threshold = 0.0;
  std::optional<double> last_failed;
  double lower_bound = 0.0;
  std::size_t largest_clique = 0;
  double heaviest_clique = 0.0;
  std::optional<double> ratio_bound;
  std::size_t rounds = 0;
  TriangulationTrace trace;
};

struct RunReport {
  std::size_t n = 0;
  std::size_t m = 0;
  Mode mode = Mode::kCardinality;
  /// Largest accepted threshold over components; for inputs that stripping
  /// reduces to nothing, the stripped-clique lower bound (already exact).
  std::optional<double> k_accepted;
  std::size_t l = 0;              // largest bag size
  double heaviest = 0.0;          // heaviest bag weight under the report's state space
  double lower_bound = 0.0;       // certified lower bound in the run's mode
  std::optional<double> ratio_bound;
  Metrics metrics;
  std::size_t fills_before = 0;
  std::size_t fills_after = 0;
  double wall_ms = 0.0;
  std::vector<Vertex> stripped;
  std::vector<ComponentReport> components;
  EdgeSet fills;                  // kept fill edges
  std::vector<Vertex> ordering;
  JunctionTree tree;
};

/// strip_simplicial -> components -> escalate -> minimize_fill -> junction
/// tree -> verification -> metrics. Weighted mode needs `ss`; metrics use
/// `ss` when given and size 2 everywhere otherwise.
/// Throws InternalError when an output fails its independent re-check.
RunReport run_pipeline(const Graph& g, const StateSpace* ss, const PipelineOptions& options = {});

/// Minimum-weight elimination, optionally followed by fill minimization,
/// reported the same way as run_pipeline.
RunReport run_enhanced_greedy(const Graph& g, const StateSpace& ss, bool minimize = true,
                              bool force_tree = false);

/// JSON with fields n, m, k_accepted, l, ratio_bound, M, T, fills_before,
/// fills_after, wall_ms, plus mode and per-component details.
std::string report_json(const RunReport& report, int indent = 2);

}  // namespace jta
