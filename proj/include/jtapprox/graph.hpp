#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jta {

using Vertex = int;
using VertexSet = std::set<Vertex>;

/// Undirected edge, always stored with first < second.
using Edge = std::pair<Vertex, Vertex>;
using EdgeSet = std::set<Edge>;

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Shared comparison tolerance for weight sums of log2 state sizes.
inline constexpr double kTolerance = 1e-9;
inline bool strictly_less(double a, double b) { return a < b - kTolerance; }
inline bool at_most(double a, double b) { return a <= b + kTolerance; }
inline bool nearly_equal(double a, double b) { return a <= b + kTolerance && b <= a + kTolerance; }

/// Immutable simple undirected graph over integer vertex ids.
///
/// Vertices are kept sorted; each vertex also has a dense local index
/// (its position in vertices()) that algorithms use for array storage.
class Graph {
 public:
  Graph() = default;

  /// Duplicate edges collapse. Throws DomainError on a self-loop or an edge
  /// endpoint outside `vertices`.
  explicit Graph(std::vector<Vertex> vertices, std::span<const Edge> edges = {});

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  bool empty() const noexcept { return vertices_.empty(); }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  VertexSet vertex_set() const { return {vertices_.begin(), vertices_.end()}; }
  bool contains(Vertex v) const;

  /// Sorted neighbor list. Throws DomainError for an unknown vertex.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  std::vector<Edge> edges() const;

  /// Position of `v` in vertices(). Throws DomainError for an unknown vertex.
  std::size_t index_of(Vertex v) const;

  /// Neighbor lists expressed as local indices.
  std::vector<std::vector<int>> local_adjacency() const;

  /// This graph plus the given edges (endpoints must already be vertices).
  Graph with_edges(const EdgeSet& extra) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// Throws DomainError unless `s` is a subset of V(g).
void require_subset(const Graph& g, const VertexSet& s, const char* what);

/// Parses PACE `.gr` text (`c` comments, one `p tw n m` header, m edge lines).
Graph parse_graph(std::string_view text);

/// Writes `.gr` text. Vertices must be exactly 1..n.
std::string write_graph(const Graph& g);

Graph induced_subgraph(const Graph& g, const VertexSet& s);

/// Components ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

bool is_clique(const Graph& g, const VertexSet& s);

struct SimplicialStrip {
  Graph residual;
  std::vector<Vertex> removed;  // removal order
};

/// Repeatedly removes the lowest-id simplicial vertex until none is left.
SimplicialStrip strip_simplicial(const Graph& g);

struct CliqueCompletion {
  Graph graph;
  EdgeSet added;
};

CliqueCompletion add_clique_edges(const Graph& g, const VertexSet& s);

/// Per-vertex domain sizes |D(v)| >= 2.
class StateSpace {
 public:
  StateSpace() = default;

  /// Every vertex of `g` gets `size`.
  static StateSpace uniform(const Graph& g, std::uint64_t size = 2);

  void set(Vertex v, std::uint64_t size);
  bool contains(Vertex v) const { return sizes_.count(v) != 0; }
  std::uint64_t size(Vertex v) const;
  /// log2 of the domain size; at least 1.
  double weight(Vertex v) const;
  const std::map<Vertex, std::uint64_t>& sizes() const noexcept { return sizes_; }

  /// Throws DomainError unless every vertex of `g` has an entry.
  void require_covers(const Graph& g) const;

 private:
  std::map<Vertex, std::uint64_t> sizes_;
};

/// Parses the sidecar format: one `<v> <size>` line per vertex, size >= 2.
/// Vertices of `g` absent from the text default to size 2.
StateSpace parse_state_space(std::string_view text, const Graph& g);
std::string write_state_space(const StateSpace& ss);

/// Set measure: cardinality, or total log2 state-space weight.
class Measure {
 public:
  static Measure cardinality() { return Measure{}; }
  static Measure weighted(const StateSpace& ss);

  bool is_weighted() const noexcept { return weights_ != nullptr; }
  double of(Vertex v) const;

  template <typename Range>
  double of_all(const Range& vs) const {
    double total = 0.0;
    for (Vertex v : vs) total += of(v);
    return total;
  }

 private:
  std::shared_ptr<const std::map<Vertex, double>> weights_;
};

}  // namespace jta
