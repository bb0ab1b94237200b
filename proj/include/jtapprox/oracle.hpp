#pragma once

#include <cstddef>
#include <optional>

#include "jtapprox/cuts.hpp"
#include "jtapprox/graph.hpp"

namespace jta {

/// Size caps beyond which the exact oracles refuse (OracleRefused).
struct OracleBudget {
  std::size_t max_n_cliquewidth = 16;
  std::size_t max_n_three_way = 12;
};

/// Exact cliquewidth (treewidth + 1) by dynamic programming over eliminated
/// vertex subsets. 0 for the empty graph.
std::size_t exact_cliquewidth(const Graph& g, const OracleBudget& budget = {});

/// Exact weighted cliquewidth: minimum over triangulations of the heaviest
/// clique's total log2 state size.
double exact_weighted_cliquewidth(const Graph& g, const StateSpace& ss,
                                  const OracleBudget& budget = {});

/// Minimum-weight vertex set (finite-capacity, non-terminal vertices only)
/// whose removal pairwise disconnects the three terminal sets, by exhaustive
/// enumeration. std::nullopt when no such set exists.
std::optional<CutResult> optimal_three_way_cut(const Graph& g, const VertexSet& a,
                                               const VertexSet& b, const VertexSet& c,
                                               const CapacityAssignment& cap,
                                               const OracleBudget& budget = {});

}  // namespace jta
