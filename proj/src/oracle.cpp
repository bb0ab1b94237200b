#include "jtapprox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "jtapprox/errors.hpp"

namespace jta {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> out(g.num_vertices(), 0);
  const auto adj = g.local_adjacency();
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (int u : adj[v]) out[v] |= Mask{1} << u;
  }
  return out;
}

/// f(S) = min over v in S of max(f(S - v), w(v) + w(Q(S - v, v))), where
/// Q(S', v) holds the vertices outside S' u {v} reachable from v through S'.
double cliquewidth_dp(const Graph& g, const std::vector<double>& weight) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0.0;
  const auto adj = adjacency_masks(g);
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<double> f(std::size_t{1} << n, std::numeric_limits<double>::infinity());
  f[0] = 0.0;
  for (Mask s = 1; s <= full && s != 0; ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n; ++v) {
      const Mask bit = Mask{1} << v;
      if (!(s & bit)) continue;
      const Mask rest = s & ~bit;
      if (!(f[rest] < best)) continue;
      Mask seen = bit;
      Mask frontier = bit;
      Mask reach = 0;
      while (frontier) {
        Mask next = 0;
        for (Mask m = frontier; m; m &= m - 1) next |= adj[__builtin_ctz(m)];
        next &= ~seen;
        seen |= next;
        reach |= next & ~rest;
        frontier = next & rest;
      }
      double cost = weight[v];
      for (Mask m = reach; m; m &= m - 1) cost += weight[__builtin_ctz(m)];
      best = std::min(best, std::max(f[rest], cost));
    }
    f[s] = best;
    if (s == full) break;
  }
  return f[full];
}

void require_size(const Graph& g, std::size_t cap, const char* what) {
  if (g.num_vertices() > cap) {
    throw OracleRefused(std::string(what) + ": graph has " + std::to_string(g.num_vertices()) +
                        " vertices, oracle limit is " + std::to_string(cap));
  }
}

}  // namespace

std::size_t exact_cliquewidth(const Graph& g, const OracleBudget& budget) {
  require_size(g, std::min<std::size_t>(budget.max_n_cliquewidth, 31), "exact_cliquewidth");
  const std::vector<double> ones(g.num_vertices(), 1.0);
  return static_cast<std::size_t>(std::lround(cliquewidth_dp(g, ones)));
}

double exact_weighted_cliquewidth(const Graph& g, const StateSpace& ss, const OracleBudget& budget) {
  require_size(g, std::min<std::size_t>(budget.max_n_cliquewidth, 31), "exact_weighted_cliquewidth");
  ss.require_covers(g);
  std::vector<double> weight;
  for (Vertex v : g.vertices()) weight.push_back(ss.weight(v));
  return cliquewidth_dp(g, weight);
}

std::optional<CutResult> optimal_three_way_cut(const Graph& g, const VertexSet& a,
                                               const VertexSet& b, const VertexSet& c,
                                               const CapacityAssignment& cap,
                                               const OracleBudget& budget) {
  require_size(g, std::min<std::size_t>(budget.max_n_three_way, 24), "optimal_three_way_cut");
  for (const VertexSet* s : {&a, &b, &c}) {
    if (s->empty()) throw DomainError("optimal_three_way_cut: terminal sets must be nonempty");
    require_subset(g, *s, "terminal set");
  }
  cap.require_covers(g);
  const std::size_t n = g.num_vertices();
  const auto adj = adjacency_masks(g);
  std::vector<Mask> terminal(3, 0);
  const VertexSet* sets[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    for (Vertex v : *sets[i]) terminal[i] |= Mask{1} << g.index_of(v);
  }
  if ((terminal[0] & terminal[1]) || (terminal[0] & terminal[2]) || (terminal[1] & terminal[2])) {
    throw DomainError("optimal_three_way_cut: terminal sets must be disjoint");
  }
  const Mask terminals = terminal[0] | terminal[1] | terminal[2];
  Mask cuttable = 0;
  std::vector<double> weight(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const Capacity cv = cap.at(g.vertices()[v]);
    if (!(terminals >> v & 1) && !cv.is_infinite()) {
      cuttable |= Mask{1} << v;
      weight[v] = cv.value();
    }
  }

  auto reach = [&](Mask from, Mask alive) {
    Mask seen = from & alive;
    Mask frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (Mask m = frontier; m; m &= m - 1) next |= adj[__builtin_ctz(m)];
      next &= alive & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  };
  const Mask all = (Mask{1} << n) - 1;

  std::optional<CutResult> best;
  // Enumerate subsets of the cuttable vertices.
  for (Mask sub = cuttable;; sub = (sub - 1) & cuttable) {
    const Mask alive = all & ~sub;
    const Mask from_a = reach(terminal[0], alive);
    const Mask from_b = reach(terminal[1], alive);
    if (!(from_a & (terminal[1] | terminal[2])) && !(from_b & terminal[2])) {
      double w = 0.0;
      for (Mask m = sub; m; m &= m - 1) w += weight[__builtin_ctz(m)];
      if (!best || strictly_less(w, best->weight)) {
        CutResult r;
        for (Mask m = sub; m; m &= m - 1) r.cut.insert(g.vertices()[__builtin_ctz(m)]);
        r.weight = w;
        best = std::move(r);
      }
    }
    if (sub == 0) break;
  }
  return best;
}

}  // namespace jta
