#include "vertex_cut_solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "jtapprox/errors.hpp"

namespace jta::detail {

namespace {

constexpr double kResidualEps = 1e-10;

int in_node(int v) { return 2 * v; }
int out_node(int v) { return 2 * v + 1; }

}  // namespace

VertexCutSolver::VertexCutSolver(std::vector<std::vector<int>> adjacency)
    : n_(static_cast<int>(adjacency.size())), adjacency_(std::move(adjacency)) {
  out_arcs_.resize(2 * n_ + 2);
  const int source = 2 * n_;
  const int sink = 2 * n_ + 1;
  split_arc_.resize(n_);
  source_arc_.resize(n_);
  sink_arc_.resize(n_);
  for (int v = 0; v < n_; ++v) {
    split_arc_[v] = static_cast<int>(arcs_.size());
    add_arc(in_node(v), out_node(v));
    source_arc_[v] = static_cast<int>(arcs_.size());
    add_arc(source, in_node(v));
    sink_arc_[v] = static_cast<int>(arcs_.size());
    add_arc(out_node(v), sink);
  }
  for (int u = 0; u < n_; ++u) {
    for (int w : adjacency_[u]) add_arc(out_node(u), in_node(w));
  }
}

void VertexCutSolver::add_arc(int from, int to) {
  out_arcs_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, 0.0, 0.0});
  out_arcs_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0.0, 0.0});
}

bool VertexCutSolver::connected_through_infinite(std::span<const double> capacity,
                                                 std::span<const char> removed,
                                                 std::span<const char> source,
                                                 std::span<const char> sink) const {
  std::vector<char>& seen = seen_;
  std::vector<int>& queue = vertex_queue_;
  seen.assign(n_, 0);
  queue.clear();
  for (int v = 0; v < n_; ++v) {
    if (source[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    if (sink[u]) return true;
    for (int w : adjacency_[u]) {
      if (seen[w] || removed[w]) continue;
      if (sink[w] || source[w] || std::isinf(capacity[w])) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

VertexCutSolver::Outcome VertexCutSolver::solve(std::span<const double> capacity,
                                                std::span<const char> removed,
                                                std::span<const char> source,
                                                std::span<const char> sink, double limit) {
  Outcome out;
  if (connected_through_infinite(capacity, removed, source, sink)) {
    out.status = Status::kUncuttable;
    return out;
  }

  for (auto& arc : arcs_) {
    arc.cap = 0.0;
    arc.flow = 0.0;
  }
  for (int u = 0; u < n_; ++u) {
    if (removed[u]) continue;
    const bool terminal = source[u] || sink[u];
    arcs_[split_arc_[u]].cap = terminal ? kInfiniteCapacity : capacity[u];
    if (source[u]) arcs_[source_arc_[u]].cap = kInfiniteCapacity;
    if (sink[u]) arcs_[sink_arc_[u]].cap = kInfiniteCapacity;
  }
  for (int u = 0; u < n_; ++u) {
    if (removed[u]) continue;
    for (int arc_id : out_arcs_[out_node(u)]) {
      if (arc_id % 2 != 0) continue;  // reverse twin
      const int to = arcs_[arc_id].to;
      if (to >= 2 * n_) continue;
      const int w = to / 2;
      if (!removed[w]) arcs_[arc_id].cap = kInfiniteCapacity;
    }
  }

  const int nodes = 2 * n_ + 2;
  const int s = 2 * n_;
  const int t = 2 * n_ + 1;
  double total = 0.0;
  // Dinic: blocking flows on the BFS level graph.
  while (build_levels(s, t)) {
    next_arc_.assign(nodes, 0);
    while (true) {
      const double pushed = push(s, t, kInfiniteCapacity);
      if (pushed <= 0.0) break;
      if (std::isinf(pushed)) {
        throw InternalError("infinite augmenting path after uncuttable pre-check");
      }
      total += pushed;
      if (total > limit + kCutLimitTolerance) {
        out.status = Status::kOverLimit;
        out.weight = total;
        return out;
      }
    }
  }

  // Residual reachability from the source marks the source side of the cut.
  // After the last phase the level graph is exactly the residual reach.
  (void)nodes;
  auto reach = [&](int node) { return level_[node] >= 0; };
  std::vector<char>& blocked = blocked_;
  blocked.assign(removed.begin(), removed.end());
  for (int v = 0; v < n_; ++v) {
    if (removed[v] || source[v] || sink[v]) continue;
    if (reach(in_node(v)) && !reach(out_node(v))) {
      out.cut.push_back(v);
      out.weight += capacity[v];
      blocked[v] = 1;
    }
  }
  if (!separated(blocked, source, sink)) {
    throw InternalError("min-cut extraction produced a non-separating vertex set");
  }
  out.status = Status::kCut;
  return out;
}

bool VertexCutSolver::build_levels(int s, int t) {
  level_.assign(out_arcs_.size(), -1);
  queue_.clear();
  queue_.push_back(s);
  level_[s] = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const int u = queue_[head];
    for (int arc_id : out_arcs_[u]) {
      const Arc& arc = arcs_[arc_id];
      if (level_[arc.to] < 0 && arc.cap - arc.flow > kResidualEps) {
        level_[arc.to] = level_[u] + 1;
        queue_.push_back(arc.to);
      }
    }
  }
  return level_[t] >= 0;
}

double VertexCutSolver::push(int u, int t, double pushed) {
  if (u == t) return pushed;
  const auto& arcs = out_arcs_[u];
  for (std::size_t& i = next_arc_[u]; i < arcs.size(); ++i) {
    Arc& arc = arcs_[arcs[i]];
    const double residual = arc.cap - arc.flow;
    if (level_[arc.to] != level_[u] + 1 || residual <= kResidualEps) continue;
    const double got = push(arc.to, t, std::min(pushed, residual));
    if (got > 0.0) {
      arc.flow += got;
      arcs_[arcs[i] ^ 1].flow -= got;
      return got;
    }
  }
  return 0.0;
}

bool VertexCutSolver::separated(std::span<const char> blocked, std::span<const char> from,
                                std::span<const char> to) const {
  std::vector<char>& seen = seen_;
  std::vector<int>& queue = vertex_queue_;
  seen.assign(n_, 0);
  queue.clear();
  for (int v = 0; v < n_; ++v) {
    if (from[v] && !blocked[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    if (to[u]) return false;
    for (int w : adjacency_[u]) {
      if (!seen[w] && !blocked[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return true;
}

std::vector<int> VertexCutSolver::components(std::span<const char> blocked) const {
  std::vector<int> label(n_, -1);
  int next = 0;
  for (int start = 0; start < n_; ++start) {
    if (blocked[start] || label[start] != -1) continue;
    std::queue<int> queue;
    queue.push(start);
    label[start] = next;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int w : adjacency_[u]) {
        if (!blocked[w] && label[w] == -1) {
          label[w] = next;
          queue.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace jta::detail
