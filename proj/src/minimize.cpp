#include "jtapprox/minimize.hpp"

#include <algorithm>
#include <vector>

#include "jtapprox/chordal.hpp"
#include "jtapprox/errors.hpp"

namespace jta {

MinimizationReport minimize_fill(const Graph& g, const EdgeSet& fills,
                                 std::span<const Vertex> ordering) {
  const std::size_t n = g.num_vertices();
  if (ordering.size() != n) throw DomainError("minimize_fill: ordering is not a permutation of V");
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.contains(ordering[i])) throw DomainError("minimize_fill: ordering has an unknown vertex");
    int& p = pos[g.index_of(ordering[i])];
    if (p >= 0) throw DomainError("minimize_fill: ordering repeats a vertex");
    p = static_cast<int>(i);
  }

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.edges()) {
    adj[g.index_of(u)][g.index_of(v)] = adj[g.index_of(v)][g.index_of(u)] = 1;
  }
  struct Candidate {
    Edge edge;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Candidate> candidates;
  for (const auto& [u, v] : fills) {
    if (u == v || !g.contains(u) || !g.contains(v)) {
      throw DomainError("minimize_fill: fill edge endpoint is not a vertex of G");
    }
    const std::size_t a = g.index_of(u);
    const std::size_t b = g.index_of(v);
    if (adj[a][b]) throw DomainError("minimize_fill: fill edge is already an edge of G");
    adj[a][b] = adj[b][a] = 1;
    candidates.push_back({make_edge(u, v), a, b});
  }
  if (!detail::is_chordal_dense(adj)) throw DomainError("minimize_fill: G plus fills is not chordal");

  auto key = [&](const Candidate& c) {
    const int pa = pos[c.a];
    const int pb = pos[c.b];
    return std::pair{std::max(pa, pb), std::min(pa, pb)};
  };
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
    const auto kx = key(x);
    const auto ky = key(y);
    if (kx.first != ky.first) return kx.first > ky.first;
    return kx.second < ky.second;
  });

  MinimizationReport report;
  std::vector<char> alive(candidates.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    ++report.passes;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!alive[i]) continue;
      const auto& c = candidates[i];
      adj[c.a][c.b] = adj[c.b][c.a] = 0;
      if (detail::is_chordal_dense(adj)) {
        alive[i] = 0;
        report.removed.insert(c.edge);
        changed = true;
      } else {
        adj[c.a][c.b] = adj[c.b][c.a] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (alive[i]) report.kept.insert(candidates[i].edge);
  }
  return report;
}

}  // namespace jta
