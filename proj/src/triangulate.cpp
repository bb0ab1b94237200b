#include "jtapprox/triangulate.hpp"

#include <algorithm>
#include <cmath>

#include "jtapprox/chordal.hpp"
#include "jtapprox/decomp.hpp"
#include "jtapprox/errors.hpp"

namespace jta {

namespace {

struct Elimination {
  std::vector<Vertex> order;
  EdgeSet fills;
};

Elimination greedy_eliminate(const Graph& g, const Measure& measure) {
  const std::size_t n = g.num_vertices();
  std::vector<std::set<int>> adj(n);
  const auto local = g.local_adjacency();
  for (std::size_t v = 0; v < n; ++v) adj[v].insert(local[v].begin(), local[v].end());
  std::vector<double> weight(n);
  for (std::size_t v = 0; v < n; ++v) weight[v] = measure.of(g.vertices()[v]);
  std::vector<char> gone(n, 0);

  Elimination out;
  out.order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    int pick = -1;
    double best = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (gone[v]) continue;
      double score = weight[v];
      for (int u : adj[v]) score += weight[u];
      if (pick < 0 || strictly_less(score, best)) {
        pick = static_cast<int>(v);
        best = score;
      }
    }
    const std::vector<int> nbrs(adj[pick].begin(), adj[pick].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (adj[nbrs[i]].insert(nbrs[j]).second) {
          adj[nbrs[j]].insert(nbrs[i]);
          out.fills.insert(make_edge(g.vertices()[nbrs[i]], g.vertices()[nbrs[j]]));
        }
      }
    }
    for (int u : nbrs) adj[u].erase(pick);
    adj[pick].clear();
    gone[pick] = 1;
    out.order.push_back(g.vertices()[pick]);
  }
  return out;
}

/// Smallest threshold strictly above the point where `value` < factor * t.
double flip_threshold(double value, double factor, bool weighted) {
  if (weighted) return (value + 2 * kTolerance) / factor;
  return std::floor((value + kTolerance) / factor) + 1;
}

class Triangulator {
 public:
  Triangulator(double threshold, double alpha, Measure measure, const TriangulateOptions& options)
      : t_(threshold), alpha_(alpha), measure_(std::move(measure)), options_(options) {}

  /// Appends the block order of V(g) \ W and the fill edges of g. False on failure.
  bool run(const Graph& g, const VertexSet& w, std::vector<Vertex>& order, EdgeSet& fills,
           std::size_t depth) {
    ++trace.nodes;
    trace.depth = std::max(trace.depth, depth);
    const double m_w = measure_.of_all(w);
    trace.max_w = std::max(trace.max_w, m_w);
    const double m_v = measure_.of_all(g.vertices());
    const double leaf_bound = (2 * alpha_ + 1) * t_;

    if (strictly_less(m_v, leaf_bound)) {
      const auto completed = add_clique_edges(g, w);
      auto elim = greedy_eliminate(completed.graph, measure_);
      fills.insert(completed.added.begin(), completed.added.end());
      fills.insert(elim.fills.begin(), elim.fills.end());
      for (Vertex v : elim.order) {
        if (!w.count(v)) order.push_back(v);
      }
      return true;
    }

    DecompBudget budget{t_, alpha_, measure_};
    const SearchResult search =
        find_w_decomposition(g, w, budget,
                             SearchOptions{options_.record_thresholds,
                                           flip_threshold(m_v, 2 * alpha_ + 1, measure_.is_weighted())});
    trace.partitions += search.partitions_tested;
    if (!search.decomposition) {
      if (options_.record_thresholds) {
        double next = flip_threshold(m_v, 2 * alpha_ + 1, measure_.is_weighted());
        if (search.next_threshold) next = std::min(next, *search.next_threshold);
        next_threshold = next;
      }
      return false;
    }
    const Decomposition& d = *search.decomposition;

    EdgeSet local_fills;
    for (const VertexSet* part : {&d.a, &d.b, &d.c}) {
      if (part->empty()) continue;
      VertexSet child_vertices = *part;
      child_vertices.insert(d.x.begin(), d.x.end());
      if (child_vertices.size() >= g.num_vertices()) {
        throw InternalError("triangulate: recursive call does not shrink the graph");
      }
      VertexSet child_w = d.x;
      for (Vertex v : w) {
        if (part->count(v)) child_w.insert(v);
      }
      const Graph child = induced_subgraph(g, child_vertices);
      if (!run(child, child_w, order, local_fills, depth + 1)) return false;
    }
    for (Vertex v : d.x) {
      if (!w.count(v)) order.push_back(v);
    }
    VertexSet clique = w;
    clique.insert(d.x.begin(), d.x.end());
    for (auto it = clique.begin(); it != clique.end(); ++it) {
      for (auto jt = std::next(it); jt != clique.end(); ++jt) {
        if (!g.adjacent(*it, *jt)) local_fills.insert(make_edge(*it, *jt));
      }
    }

    if (options_.check_nodes) {
      const Graph filled = g.with_edges(local_fills);
      if (!is_chordal(filled)) throw InternalError("triangulate: node result is not chordal");
      if (!is_clique(filled, clique)) throw InternalError("triangulate: W u X is not a clique");
    }
    fills.insert(local_fills.begin(), local_fills.end());
    return true;
  }

  TriangulationTrace trace;
  std::optional<double> next_threshold;

 private:
  double t_;
  double alpha_;
  Measure measure_;
  TriangulateOptions options_;
};

TriangulationResult run_triangulation(const Graph& g, const VertexSet& w, double t, double alpha,
                                      const Measure& measure, const TriangulateOptions& options) {
  require_subset(g, w, "triangulate W");
  if (!(alpha >= 1.0) || !(t > 0.0)) {
    throw DomainError("triangulate requires alpha >= 1 and a positive threshold");
  }
  if (!strictly_less(measure.of_all(w), (alpha + 1) * t)) {
    throw DomainError("triangulate requires measure(W) < (alpha + 1) * threshold");
  }
  Triangulator tri(t, alpha, measure, options);
  TriangulationResult result;
  const bool ok = tri.run(g, w, result.ordering, result.fill_edges, 0);
  result.trace = tri.trace;
  if (!ok) {
    result.verdict = Verdict::kExceedsThreshold;
    result.fill_edges.clear();
    result.ordering.clear();
    result.next_threshold = tri.next_threshold;
    return result;
  }
  // The top-level W vertices are never emitted by the recursion.
  for (Vertex v : w) result.ordering.push_back(v);
  if (result.ordering.size() != g.num_vertices()) {
    throw InternalError("triangulate: ordering is not a permutation of V");
  }
  const Graph filled = g.with_edges(result.fill_edges);
  if (!is_clique(filled, w)) throw InternalError("triangulate: W is not a clique of the output");
  const auto [size, weight] = clique_extremes(filled, measure);
  if (!strictly_less(measure.is_weighted() ? weight : static_cast<double>(size),
                     (2 * alpha + 1) * t)) {
    throw InternalError("triangulate: output clique exceeds the (2 alpha + 1) bound");
  }
  result.largest_clique_size = size;
  result.heaviest_clique_weight = weight;
  return result;
}

}  // namespace

std::pair<std::size_t, double> clique_extremes(const Graph& chordal_graph, const Measure& measure) {
  const ChordalityCheck check = check_chordal(chordal_graph);
  if (!check.chordal()) throw DomainError("clique_extremes: graph is not chordal");
  std::size_t largest = 0;
  double heaviest = 0.0;
  for (const auto& c : extract_cliques(chordal_graph, check.elimination_order)) {
    largest = std::max(largest, c.size());
    heaviest = std::max(heaviest, measure.of_all(c));
  }
  return {largest, heaviest};
}

TriangulationResult triangulate(const Graph& g, const VertexSet& w, int k, double alpha,
                                const TriangulateOptions& options) {
  if (k < 1) throw DomainError("triangulate requires k >= 1");
  return run_triangulation(g, w, k, alpha, Measure::cardinality(), options);
}

TriangulationResult w_triangulate(const Graph& g, const VertexSet& w, double m, double alpha,
                                  const StateSpace& ss, const TriangulateOptions& options) {
  ss.require_covers(g);
  return run_triangulation(g, w, m, alpha, Measure::weighted(ss), options);
}

EdgeSet leaf_complete(const Graph& g, const VertexSet& w) {
  auto completed = add_clique_edges(g, w);
  auto elim = greedy_eliminate(completed.graph, Measure::cardinality());
  completed.added.insert(elim.fills.begin(), elim.fills.end());
  return completed.added;
}

TriangulationResult greedy_min_weight(const Graph& g, const StateSpace& ss) {
  ss.require_covers(g);
  const Measure measure = Measure::weighted(ss);
  auto elim = greedy_eliminate(g, measure);
  TriangulationResult result;
  result.fill_edges = std::move(elim.fills);
  result.ordering = std::move(elim.order);
  const auto [size, weight] = clique_extremes(g.with_edges(result.fill_edges), measure);
  result.largest_clique_size = size;
  result.heaviest_clique_weight = weight;
  return result;
}

EscalationResult escalate(const Graph& g, double alpha, const EscalationPolicy& policy,
                          const StateSpace* ss, const TriangulateOptions& options) {
  EscalationResult out;
  TriangulateOptions opts = options;
  if (ss == nullptr) {
    int k = std::max(1, static_cast<int>(std::ceil(policy.start - kTolerance)));
    opts.record_thresholds = policy.jump == Jump::kKStar;
    for (;;) {
      ++out.rounds;
      TriangulationResult r = triangulate(g, {}, k, alpha, opts);
      if (r.success()) {
        out.threshold = k;
        out.result = std::move(r);
        break;
      }
      out.last_failed = k;
      int next = k + 1;
      if (r.next_threshold) next = std::max(next, static_cast<int>(std::lround(*r.next_threshold)));
      k = next;
    }
    double lower = out.last_failed ? *out.last_failed + 1 : 1.0;
    if (g.num_edges() > 0) lower = std::max(lower, 2.0);
    if (g.empty()) lower = 0.0;
    out.lower_bound = lower;
    if (lower > 0 && (out.last_failed || out.threshold <= lower)) {
      out.result.ratio_bound = static_cast<double>(out.result.largest_clique_size) / lower;
    }
    return out;
  }

  ss->require_covers(g);
  double heaviest_edge = 0.0;
  for (const auto& [u, v] : g.edges()) heaviest_edge = std::max(heaviest_edge, ss->weight(u) + ss->weight(v));
  for (Vertex v : g.vertices()) heaviest_edge = std::max(heaviest_edge, ss->weight(v));
  double m = policy.start > 0.0 ? policy.start : heaviest_edge;
  if (m <= 0.0) m = 1.0;
  opts.record_thresholds = policy.jump != Jump::kIncrement;
  for (;;) {
    ++out.rounds;
    TriangulationResult r = w_triangulate(g, {}, m, alpha, *ss, opts);
    if (r.success()) {
      out.threshold = m;
      out.result = std::move(r);
      break;
    }
    out.last_failed = m;
    double next = m * 1.05;
    if (r.next_threshold && *r.next_threshold > m + kTolerance) next = *r.next_threshold;
    m = next;
  }
  const double lower = std::max(heaviest_edge, out.last_failed.value_or(0.0));
  out.lower_bound = lower;
  if (lower > 0) out.result.ratio_bound = out.result.heaviest_clique_weight / lower;
  return out;
}

}  // namespace jta
