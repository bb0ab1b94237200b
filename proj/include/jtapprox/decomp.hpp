#pragma once

#include <cstddef>
#include <optional>

#include "jtapprox/graph.hpp"

namespace jta {

/// Split of the monitored set W into the parts forced into A, B, C and X.
struct WPartition {
  VertexSet a;
  VertexSet b;
  VertexSet c;
  VertexSet x;
};

/// Partition (X, A, B, C) of V with A, B nonempty and no edges between A, B, C.
struct Decomposition {
  VertexSet x;
  VertexSet a;
  VertexSet b;
  VertexSet c;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Threshold t (k in cardinality mode, m in weighted mode), approximation
/// factor alpha, and the set measure that goes with the mode.
struct DecompBudget {
  double threshold = 1.0;
  double alpha = 2.0;
  Measure measure = Measure::cardinality();
};

/// Structural check only: partition of V(g), A and B nonempty, no A/B/C edges.
bool is_decomposition(const Graph& g, const Decomposition& d);

/// Full W-decomposition test wrt (t, alpha), including the premise
/// measure(V) >= (2 alpha + 1) t. Returns false (never throws) on any violation.
bool is_w_decomposition(const Graph& g, const Decomposition& d, const VertexSet& w,
                        const DecompBudget& budget);

/// Smallest threshold t' at which `d` passes the W-decomposition bounds,
/// ignoring the premise on measure(V). Integral in cardinality mode.
double min_valid_threshold(const Decomposition& d, const VertexSet& w, const DecompBudget& budget);

/// Procedure I: removes W_X, cuts W_A, W_B, W_C apart with the 2-approximate
/// 3-way vertex cut (an exact 2-way cut when W_C is empty) and accepts if the
/// bounds hold. When W_B is empty every vertex outside W stands in for it in
/// turn and the cheapest accepted result wins. Returns std::nullopt when W_A
/// is empty or no candidate is accepted.
std::optional<Decomposition> procedure_one(const Graph& g, const WPartition& p,
                                           const DecompBudget& budget);

/// Procedure II: minimum vertex cut between W_A and W_B u W_C, C empty.
std::optional<Decomposition> procedure_two(const Graph& g, const WPartition& p,
                                           const DecompBudget& budget);

struct SearchOptions {
  /// Disable cut-weight early exits and record, for every decomposition
  /// that was built but rejected, the smallest threshold that would accept it.
  bool record_thresholds = false;
  /// Rejected thresholds at or above this value are of no interest; cuts that
  /// could only produce such thresholds are abandoned early.
  std::optional<double> record_cap;
};

struct SearchResult {
  std::optional<Decomposition> decomposition;
  std::size_t partitions_tested = 0;
  /// Minimum over rejected decompositions of min_valid_threshold, when
  /// recording was requested and any rejected decomposition was built.
  /// Only exact below the record cap and the smallest value seen so far.
  std::optional<double> next_threshold;
};

/// Enumerates partitions of W by |W_X| ascending, then lexicographically by
/// label vector (A < B < C < X over W in ascending id order), keeping only
/// measure(W_A) >= measure(W_B) >= measure(W_C). Returns the first accepted
/// decomposition. The partition W_X = W is tried by a minimum cut over every
/// non-adjacent pair outside W (the cheapest accepted pair wins).
///
/// Requires measure(W) < (alpha + 1) t and measure(V) >= (2 alpha + 1) t;
/// throws DomainError otherwise.
SearchResult find_w_decomposition(const Graph& g, const VertexSet& w, const DecompBudget& budget,
                                  const SearchOptions& options = {});

}  // namespace jta
