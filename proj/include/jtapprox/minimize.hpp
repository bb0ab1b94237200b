#pragma once

#include <cstddef>
#include <span>

#include "jtapprox/graph.hpp"

namespace jta {

struct MinimizationReport {
  EdgeSet removed;
  EdgeSet kept;
  std::size_t passes = 0;
};

/// Deletes redundant fill edges until G plus the kept fills is a minimal
/// triangulation. Each candidate is removed tentatively and kept out only if
/// the graph stays chordal; sweeps repeat until one removes nothing.
/// Candidates are visited by the later endpoint's position in `ordering`
/// (latest first), then by the earlier endpoint's position.
///
/// Throws DomainError if G plus `fills` is not chordal, `ordering` is not a
/// permutation of V(g), or a fill edge is not a non-edge of g.
MinimizationReport minimize_fill(const Graph& g, const EdgeSet& fills,
                                 std::span<const Vertex> ordering);

}  // namespace jta
