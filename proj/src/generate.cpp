#include "jtapprox/generate.hpp"

#include <numeric>
#include <vector>

#include "jtapprox/errors.hpp"

namespace jta {

Graph random_graph(int n, std::size_t m, std::mt19937_64& rng) {
  if (n < 0) throw DomainError("random_graph: negative vertex count");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  if (m > pairs) {
    throw DomainError("random_graph: " + std::to_string(m) + " edges do not fit on " +
                      std::to_string(n) + " vertices");
  }
  std::vector<Vertex> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 1);

  std::vector<Edge> edges;
  edges.reserve(m);
  auto decode = [n](std::size_t index) {
    // Pairs (u, v), u < v, listed row by row.
    Vertex u = 1;
    std::size_t row = static_cast<std::size_t>(n - 1);
    while (index >= row) {
      index -= row;
      --row;
      ++u;
    }
    return Edge{u, static_cast<Vertex>(u + 1 + index)};
  };
  if (pairs <= (std::size_t{1} << 22)) {
    // Partial Fisher-Yates over all pair indices.
    std::vector<std::size_t> index(pairs);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pairs - 1);
      std::swap(index[i], index[pick(rng)]);
      edges.push_back(decode(index[i]));
    }
  } else {
    EdgeSet chosen;
    std::uniform_int_distribution<Vertex> pick(1, n);
    while (chosen.size() < m) {
      const Vertex u = pick(rng);
      const Vertex v = pick(rng);
      if (u != v && chosen.insert(make_edge(u, v)).second) edges.push_back(make_edge(u, v));
    }
  }
  return Graph(std::move(vertices), edges);
}

std::uint64_t draw_size(const SizeRange& range, std::mt19937_64& rng) {
  if (range.lo < 2 || range.lo > range.hi) throw DomainError("size range must satisfy 2 <= lo <= hi");
  if (!range.skew_mean) {
    return std::uniform_int_distribution<std::uint64_t>(range.lo, range.hi)(rng);
  }
  const double excess = *range.skew_mean - static_cast<double>(range.lo);
  if (!(excess > 0.0)) throw DomainError("skew mean must exceed the low end of the size range");
  std::geometric_distribution<std::uint64_t> extra(1.0 / (1.0 + excess));
  for (;;) {
    const std::uint64_t size = range.lo + extra(rng);
    if (size <= range.hi) return size;
  }
}

StateSpace random_state_space(const Graph& g, const SizeRange& range, std::mt19937_64& rng) {
  StateSpace ss;
  for (Vertex v : g.vertices()) ss.set(v, draw_size(range, rng));
  return ss;
}

}  // namespace jta
