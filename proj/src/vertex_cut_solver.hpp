#pragma once

#include <limits>
#include <span>
#include <vector>

namespace jta::detail {

inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();
/// Slack before a running flow counts as over the limit.
inline constexpr double kCutLimitTolerance = 1e-9;

/// Max-flow engine for vertex-capacitated s-t cuts on a fixed graph given by
/// local-index adjacency. The split network is built once; each solve() only
/// resets capacities, so one solver serves many cut queries on the same graph.
class VertexCutSolver {
 public:
  explicit VertexCutSolver(std::vector<std::vector<int>> adjacency);

  enum class Status { kCut, kUncuttable, kOverLimit };

  struct Outcome {
    Status status = Status::kUncuttable;
    std::vector<int> cut;  // sorted local indices
    double weight = 0.0;
  };

  /// `capacity[v]` is kInfiniteCapacity for uncuttable vertices. Removed
  /// vertices are deleted from the graph. Source and sink masks must be
  /// disjoint and exclude removed vertices; terminals are never cut. If the
  /// flow exceeds `limit` the search stops with kOverLimit.
  Outcome solve(std::span<const double> capacity, std::span<const char> removed,
                std::span<const char> source, std::span<const char> sink,
                double limit = kInfiniteCapacity);

  /// True iff no path joins `from` to `to` avoiding `blocked`.
  bool separated(std::span<const char> blocked, std::span<const char> from,
                 std::span<const char> to) const;

  /// Component labels of the graph minus `blocked` (-1 for blocked vertices).
  std::vector<int> components(std::span<const char> blocked) const;

  int size() const noexcept { return n_; }
  const std::vector<std::vector<int>>& adjacency() const noexcept { return adjacency_; }

 private:
  struct Arc {
    int to;
    double cap;
    double flow;
  };

  void add_arc(int from, int to);
  bool build_levels(int s, int t);
  double push(int u, int t, double pushed);
  bool connected_through_infinite(std::span<const double> capacity, std::span<const char> removed,
                                  std::span<const char> source, std::span<const char> sink) const;

  int n_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<Arc> arcs_;                  // arc i and i^1 are reverse twins
  std::vector<std::vector<int>> out_arcs_; // per network node
  std::vector<int> split_arc_;             // in(v) -> out(v)
  std::vector<int> source_arc_;            // S -> in(v)
  std::vector<int> sink_arc_;              // out(v) -> T
  std::vector<int> level_;
  std::vector<std::size_t> next_arc_;
  std::vector<int> queue_;
  std::vector<char> blocked_;
  // Scratch for the const traversals.
  mutable std::vector<char> seen_;
  mutable std::vector<int> vertex_queue_;
};

}  // namespace jta::detail
