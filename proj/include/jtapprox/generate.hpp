#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "jtapprox/graph.hpp"

namespace jta {

/// Uniform random simple graph on vertices 1..n with exactly m edges.
/// Throws DomainError if m > n(n-1)/2.
Graph random_graph(int n, std::size_t m, std::mt19937_64& rng);

struct SizeRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
  /// When set, sizes follow a geometric law shifted to `lo` with this mean,
  /// redrawn when above `hi` (skewed toward small domains). Uniform otherwise.
  std::optional<double> skew_mean;
};

/// Throws DomainError if lo < 2, lo > hi, or the skew mean is not above lo.
std::uint64_t draw_size(const SizeRange& range, std::mt19937_64& rng);

StateSpace random_state_space(const Graph& g, const SizeRange& range, std::mt19937_64& rng);

}  // namespace jta
