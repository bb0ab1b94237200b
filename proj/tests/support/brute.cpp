#include "brute.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace brute {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> masks(const Graph& g) {
  const auto& vs = g.vertices();
  std::vector<Mask> adj(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (i != j && g.adjacent(vs[i], vs[j])) adj[i] |= Mask{1} << j;
    }
  }
  return adj;
}

Mask reach(const std::vector<Mask>& adj, Mask from, Mask alive) {
  Mask seen = from & alive;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if ((seen >> v & 1) && (adj[v] & alive & ~seen)) {
        seen |= adj[v] & alive;
        grew = true;
      }
    }
  }
  return seen;
}

Mask mask_of(const Graph& g, const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << g.index_of(v);
  return m;
}

}  // namespace

std::optional<double> min_vertex_cut_weight(const Graph& g, const VertexSet& s, const VertexSet& t,
                                            const jta::CapacityAssignment& cap) {
  const std::size_t n = g.num_vertices();
  const auto adj = masks(g);
  const Mask ms = mask_of(g, s);
  const Mask mt = mask_of(g, t);
  std::optional<double> best;
  for (Mask sub = 0; sub < (Mask{1} << n); ++sub) {
    if (sub & (ms | mt)) continue;
    double w = 0;
    bool ok = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(sub >> v & 1)) continue;
      const auto c = cap.at(g.vertices()[v]);
      if (c.is_infinite()) {
        ok = false;
        break;
      }
      w += c.value();
    }
    if (!ok) continue;
    const Mask alive = ((Mask{1} << n) - 1) & ~sub;
    if (reach(adj, ms, alive) & mt) continue;
    if (!best || w < *best) best = w;
  }
  return best;
}

int max_disjoint_paths(const Graph& g, Vertex s, Vertex t) {
  const std::size_t n = g.num_vertices();
  const auto adj = masks(g);
  const int si = static_cast<int>(g.index_of(s));
  const int ti = static_cast<int>(g.index_of(t));
  // Interiors of all simple s-t paths.
  std::vector<char> is_interior(std::size_t{1} << n, 0);
  std::function<void(int, Mask)> walk = [&](int v, Mask used) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!(adj[v] >> u & 1) || (used >> u & 1)) continue;
      if (static_cast<int>(u) == ti) {
        is_interior[used & ~(Mask{1} << si)] = 1;
        continue;
      }
      walk(static_cast<int>(u), used | Mask{1} << u);
    }
  };
  walk(si, Mask{1} << si);
  std::vector<Mask> interiors;
  for (Mask m = 0; m < is_interior.size(); ++m) {
    if (is_interior[m]) interiors.push_back(m);
  }
  // Set packing: best[U] = most pairwise disjoint interiors inside U.
  const Mask universe = ((Mask{1} << n) - 1) & ~(Mask{1} << si) & ~(Mask{1} << ti);
  std::vector<int> best(std::size_t{1} << n, 0);
  for (Mask u = 1; u < best.size(); ++u) {
    if (u & ~universe) continue;
    const Mask low = u & (~u + 1);
    int value = best[u & ~low];
    for (Mask m : interiors) {
      if ((m & low) && (m & ~u) == 0) value = std::max(value, 1 + best[u & ~m]);
    }
    best[u] = value;
  }
  return best[universe];
}

double permutation_cliquewidth(const Graph& g, const std::vector<double>& weights) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const auto base = masks(g);
  double best = std::numeric_limits<double>::infinity();
  do {
    auto adj = base;
    Mask gone = 0;
    double worst = 0;
    for (int v : perm) {
      const Mask nb = adj[v] & ~gone;
      double w = weights[v];
      for (std::size_t u = 0; u < n; ++u) {
        if (nb >> u & 1) w += weights[u];
      }
      worst = std::max(worst, w);
      for (std::size_t u = 0; u < n; ++u) {
        if (nb >> u & 1) adj[u] |= nb & ~(Mask{1} << u);
      }
      gone |= Mask{1} << v;
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double permutation_cliquewidth(const Graph& g) {
  return permutation_cliquewidth(g, std::vector<double>(g.num_vertices(), 1.0));
}

bool chordal_by_induced_cycles(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto adj = masks(g);
  for (Mask sub = 0; sub < (Mask{1} << n); ++sub) {
    if (__builtin_popcount(sub) < 4) continue;
    bool all_two = true;
    for (std::size_t v = 0; v < n && all_two; ++v) {
      if ((sub >> v & 1) && __builtin_popcount(adj[v] & sub) != 2) all_two = false;
    }
    if (!all_two) continue;
    const Mask first = sub & (~sub + 1);
    if (reach(adj, first, sub) == sub) return false;
  }
  return true;
}

std::vector<VertexSet> maximal_cliques(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto adj = masks(g);
  std::vector<Mask> cliques;
  for (Mask sub = 1; sub < (Mask{1} << n); ++sub) {
    bool clique = true;
    for (std::size_t v = 0; v < n && clique; ++v) {
      if ((sub >> v & 1) && (adj[v] & sub) != (sub & ~(Mask{1} << v))) clique = false;
    }
    if (!clique) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v) {
      if (!(sub >> v & 1) && (adj[v] & sub) == sub) maximal = false;
    }
    if (maximal) cliques.push_back(sub);
  }
  std::vector<VertexSet> out;
  for (Mask c : cliques) {
    VertexSet s;
    for (std::size_t v = 0; v < n; ++v) {
      if (c >> v & 1) s.insert(g.vertices()[v]);
    }
    out.push_back(s);
  }
  return out;
}

std::size_t min_fill_with_clique(const Graph& g, const VertexSet& w) {
  std::vector<jta::Edge> non_edges;
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacent(vs[i], vs[j])) non_edges.emplace_back(vs[i], vs[j]);
    }
  }
  std::size_t best = non_edges.size();
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << non_edges.size()); ++sub) {
    if (static_cast<std::size_t>(__builtin_popcountll(sub)) >= best) continue;
    jta::EdgeSet add;
    for (std::size_t i = 0; i < non_edges.size(); ++i) {
      if (sub >> i & 1) add.insert(non_edges[i]);
    }
    const Graph h = g.with_edges(add);
    if (jta::is_clique(h, w) && chordal_by_induced_cycles(h)) best = add.size();
  }
  return best;
}

Graph random_gnp(int n, double p, std::mt19937_64& rng) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  std::bernoulli_distribution coin(p);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(vs, edges);
}

std::vector<Graph> corpus(std::size_t count, int min_n, int max_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(min_n, max_n);
  const double densities[] = {0.15, 0.3, 0.45, 0.6, 0.8};
  std::vector<Graph> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_gnp(size(rng), densities[i % 5], rng));
  }
  return out;
}

Graph path(int n) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(vs, edges);
}

Graph cycle(int n) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, n);
  return Graph(vs, edges);
}

Graph complete(int n) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return Graph(vs, edges);
}

Graph grid(int rows, int cols) {
  std::vector<Vertex> vs(rows * cols);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c + 1; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(vs, edges);
}

Graph star(int leaves) {
  std::vector<Vertex> vs(leaves + 1);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  for (int i = 2; i <= leaves + 1; ++i) edges.emplace_back(1, i);
  return Graph(vs, edges);
}

Graph random_tree(int n, std::mt19937_64& rng) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<jta::Edge> edges;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> parent(1, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  return Graph(vs, edges);
}

}  // namespace brute
