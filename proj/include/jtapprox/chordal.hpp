#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jtapprox/graph.hpp"

namespace jta {

struct ChordalityCheck {
  /// Perfect elimination ordering (reverse maximum-cardinality-search order)
  /// when the graph is chordal.
  std::vector<Vertex> elimination_order;
  /// A chordless cycle of length >= 4, listed in cycle order, otherwise.
  std::vector<Vertex> chordless_cycle;

  bool chordal() const { return chordless_cycle.empty(); }
};

/// Maximum-cardinality search, ties broken by lowest vertex id.
ChordalityCheck check_chordal(const Graph& g);
bool is_chordal(const Graph& g);

/// Every vertex's later neighbors form a clique, and `order` permutes V(g).
bool is_perfect_elimination_ordering(const Graph& g, std::span<const Vertex> order);

/// Maximal cliques of a chordal graph, in order of their earliest vertex in
/// `peo`. Throws DomainError if `peo` is not a perfect elimination ordering.
std::vector<VertexSet> extract_cliques(const Graph& g, std::span<const Vertex> peo);

/// Tree (or forest) over bags; tree edges join bag indices.
struct JunctionTree {
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  VertexSet separator(std::size_t edge) const;
  std::size_t max_bag_size() const;
};

/// Maximum-weight spanning tree of the clique-intersection graph (Kruskal;
/// ties by larger intersection, then smaller index pair). With
/// `connect_components` false, empty separators are left out and the result
/// is a forest with one tree per connected component.
/// Throws InternalError if running intersection fails (non-chordal input).
JunctionTree build_junction_tree(const std::vector<VertexSet>& cliques,
                                 bool connect_components = true);

/// Independent structural check of a junction tree against the chordal
/// graph it decomposes. Returns an empty string when valid, otherwise the
/// first problem found.
std::string verify_junction_tree(const JunctionTree& jt, const Graph& chordal_graph,
                                 bool require_connected = true);

struct Metrics {
  double heaviest = 0.0;     // M: log2 state space of the heaviest bag
  double total = 0.0;        // T: log2 of the total state space over bags
  std::size_t largest_bag_size = 0;
};

/// Throws DomainError if a bag vertex has no state size.
Metrics compute_metrics(const JunctionTree& jt, const StateSpace& ss);

/// `.td` text: `s td <#bags> <max-bag-size> <n>`, `b <id> <v...>` lines and
/// `<id> <id>` tree edges, bag ids 1-based.
std::string write_td(const JunctionTree& jt, std::size_t num_vertices);

struct TdFile {
  JunctionTree tree;
  std::size_t num_vertices = 0;
};

TdFile parse_td(std::string_view text);

namespace detail {
/// Chordality test on a dense adjacency matrix.
bool is_chordal_dense(const std::vector<std::vector<char>>& adjacency);
}  // namespace detail

}  // namespace jta
