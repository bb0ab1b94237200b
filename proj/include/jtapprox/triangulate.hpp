#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jtapprox/graph.hpp"

namespace jta {

enum class Verdict { kSuccess, kExceedsThreshold };

struct TriangulationTrace {
  double max_w = 0.0;  // largest measure(W) seen at any recursion node
  std::size_t depth = 0;
  std::size_t partitions = 0;
  std::size_t nodes = 0;
};

struct TriangulationResult {
  EdgeSet fill_edges;
  /// Recursion-derived order of V(G) \ W (children's blocks, then X \ W).
  /// For greedy_min_weight, the elimination order.
  std::vector<Vertex> ordering;
  Verdict verdict = Verdict::kSuccess;
  std::size_t largest_clique_size = 0;
  double heaviest_clique_weight = 0.0;
  /// l over a certified lower bound on the cliquewidth; set by escalate.
  std::optional<double> ratio_bound;
  TriangulationTrace trace;
  /// On failure with recording on: the smallest threshold above the current
  /// one at which some rejected decomposition, or the leaf test, would flip.
  std::optional<double> next_threshold;

  bool success() const { return verdict == Verdict::kSuccess; }
};

struct TriangulateOptions {
  /// Re-check chordality and the W u X clique at every recursion node.
  bool check_nodes = false;
  bool record_thresholds = false;
};

/// Recursive triangulation wrt (k, alpha): on success W is a clique of
/// G + fills and every clique has fewer than (2 alpha + 1) k vertices; on
/// failure the cliquewidth of G exceeds k.
/// Throws DomainError unless W is a subset of V(g) and |W| < (alpha + 1) k.
TriangulationResult triangulate(const Graph& g, const VertexSet& w, int k, double alpha = 2.0,
                                const TriangulateOptions& options = {});

/// Weighted variant with vertex weights log2 |D(v)| and threshold m.
/// Throws DomainError unless w(W) < (alpha + 1) m.
TriangulationResult w_triangulate(const Graph& g, const VertexSet& w, double m, double alpha,
                                  const StateSpace& ss, const TriangulateOptions& options = {});

/// Leaf completion: clique W, then eliminate greedily by minimum cardinality
/// of v plus its current neighborhood.
EdgeSet leaf_complete(const Graph& g, const VertexSet& w);

/// Repeatedly eliminates the vertex minimizing w(v) + w(N(v)) (lowest id on
/// ties) and cliques its neighborhood.
TriangulationResult greedy_min_weight(const Graph& g, const StateSpace& ss);

enum class Jump {
  kIncrement,       // k + 1, or m * 1.05 in weighted mode
  kKStar,           // smallest threshold at which a tested decomposition passes
  kWeightedMargin,  // weighted: smallest recorded flip value, else m * 1.05
};

struct EscalationPolicy {
  /// First threshold. Non-positive means 1 (cardinality) or the heaviest edge
  /// weight w(u) + w(v) (weighted).
  double start = 0.0;
  Jump jump = Jump::kIncrement;
};

struct EscalationResult {
  double threshold = 0.0;
  TriangulationResult result;
  std::optional<double> last_failed;
  /// Certified lower bound on the (weighted) cliquewidth: last failure + 1 in
  /// cardinality mode, max(last failure, heaviest edge) in weighted mode.
  double lower_bound = 0.0;
  std::size_t rounds = 0;
};

/// Runs triangulate (or w_triangulate when `ss` is given) with W empty and
/// growing thresholds until one succeeds.
EscalationResult escalate(const Graph& g, double alpha, const EscalationPolicy& policy,
                          const StateSpace* ss = nullptr, const TriangulateOptions& options = {});

/// Largest clique size and heaviest clique weight of a chordal graph.
/// Throws DomainError if the graph is not chordal.
std::pair<std::size_t, double> clique_extremes(const Graph& chordal_graph, const Measure& measure);

}  // namespace jta
