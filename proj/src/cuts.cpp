#include "jtapprox/cuts.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "jtapprox/errors.hpp"
#include "vertex_cut_solver.hpp"

namespace jta {

Capacity Capacity::finite(double value) {
  if (!(value > 0.0) || std::isinf(value)) {
    throw DomainError("finite capacity must be a positive real");
  }
  return Capacity(value, false);
}

CapacityAssignment CapacityAssignment::unit(const Graph& g) {
  CapacityAssignment cap;
  for (Vertex v : g.vertices()) cap.set(v, Capacity::finite(1.0));
  return cap;
}

CapacityAssignment CapacityAssignment::weights(const Graph& g, const StateSpace& ss) {
  CapacityAssignment cap;
  for (Vertex v : g.vertices()) cap.set(v, Capacity::finite(ss.weight(v)));
  return cap;
}

void CapacityAssignment::set_infinite(const VertexSet& vs) {
  for (Vertex v : vs) set(v, Capacity::infinite());
}

Capacity CapacityAssignment::at(Vertex v) const {
  auto it = caps_.find(v);
  if (it == caps_.end()) throw DomainError("no capacity for vertex " + std::to_string(v));
  return it->second;
}

void CapacityAssignment::require_covers(const Graph& g) const {
  for (Vertex v : g.vertices()) (void)at(v);
}

namespace {

std::vector<char> mask_of(const Graph& g, const VertexSet& s) {
  std::vector<char> mask(g.num_vertices(), 0);
  for (Vertex v : s) mask[g.index_of(v)] = 1;
  return mask;
}

std::vector<double> capacity_vector(const Graph& g, const CapacityAssignment& cap) {
  std::vector<double> out(g.num_vertices());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Capacity c = cap.at(g.vertices()[i]);
    out[i] = c.is_infinite() ? detail::kInfiniteCapacity : c.value();
  }
  return out;
}

void require_terminal_sets(const Graph& g, const VertexSet& s, const VertexSet& t) {
  if (s.empty() || t.empty()) throw DomainError("terminal sets must be nonempty");
  require_subset(g, s, "terminal set");
  require_subset(g, t, "terminal set");
  for (Vertex v : s) {
    if (t.count(v)) throw DomainError("terminal sets must be disjoint");
  }
}

CutResult to_result(const Graph& g, const detail::VertexCutSolver::Outcome& outcome) {
  CutResult result;
  for (int i : outcome.cut) result.cut.insert(g.vertices()[i]);
  result.weight = outcome.weight;
  return result;
}

}  // namespace

std::optional<CutResult> min_st_vertex_cut(const Graph& g, const VertexSet& s, const VertexSet& t,
                                           const CapacityAssignment& cap) {
  require_terminal_sets(g, s, t);
  cap.require_covers(g);
  detail::VertexCutSolver solver(g.local_adjacency());
  const std::vector<char> none(g.num_vertices(), 0);
  auto outcome = solver.solve(capacity_vector(g, cap), none, mask_of(g, s), mask_of(g, t));
  if (outcome.status != detail::VertexCutSolver::Status::kCut) return std::nullopt;
  return to_result(g, outcome);
}

std::optional<CutResult> three_way_cut_2approx(const Graph& g, const VertexSet& a,
                                               const VertexSet& b, const VertexSet& c,
                                               const CapacityAssignment& cap) {
  require_terminal_sets(g, a, b);
  require_terminal_sets(g, a, c);
  require_terminal_sets(g, b, c);
  cap.require_covers(g);

  detail::VertexCutSolver solver(g.local_adjacency());
  const std::vector<double> caps = capacity_vector(g, cap);
  const std::vector<char> none(g.num_vertices(), 0);
  const std::array<std::vector<char>, 3> terminal{mask_of(g, a), mask_of(g, b), mask_of(g, c)};

  std::array<CutResult, 3> isolating;
  for (int i = 0; i < 3; ++i) {
    std::vector<char> others(g.num_vertices(), 0);
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      for (std::size_t v = 0; v < others.size(); ++v) others[v] |= terminal[j][v];
    }
    auto outcome = solver.solve(caps, none, terminal[i], others);
    if (outcome.status != detail::VertexCutSolver::Status::kCut) return std::nullopt;
    isolating[i] = to_result(g, outcome);
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return strictly_less(isolating[x].weight, isolating[y].weight);
  });

  CutResult result;
  result.cut = isolating[order[0]].cut;
  result.cut.insert(isolating[order[1]].cut.begin(), isolating[order[1]].cut.end());
  for (Vertex v : result.cut) result.weight += cap.at(v).value();

  if (!separates(g, result.cut, a, b) || !separates(g, result.cut, a, c) ||
      !separates(g, result.cut, b, c)) {
    throw InternalError("3-way cut does not separate the terminal sets");
  }
  return result;
}

bool separates(const Graph& g, const VertexSet& removed, const VertexSet& from, const VertexSet& to) {
  detail::VertexCutSolver solver(g.local_adjacency());
  return solver.separated(mask_of(g, removed), mask_of(g, from), mask_of(g, to));
}

}  // namespace jta
