#pragma once

#include <map>
#include <optional>

#include "jtapprox/graph.hpp"

namespace jta {

/// Vertex capacity: a positive real, or the distinct INFINITE sentinel.
class Capacity {
 public:
  static Capacity infinite() { return Capacity(0.0, true); }
  static Capacity finite(double value);

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful for finite capacities.
  double value() const noexcept { return value_; }

 private:
  Capacity(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_;
  bool infinite_;
};

class CapacityAssignment {
 public:
  CapacityAssignment() = default;

  static CapacityAssignment unit(const Graph& g);
  /// Capacity w(v) = log2 |D(v)|.
  static CapacityAssignment weights(const Graph& g, const StateSpace& ss);

  void set(Vertex v, Capacity c) { caps_.insert_or_assign(v, c); }
  void set_infinite(const VertexSet& vs);
  Capacity at(Vertex v) const;

  /// Throws DomainError unless every vertex of `g` has a capacity.
  void require_covers(const Graph& g) const;

 private:
  std::map<Vertex, Capacity> caps_;
};

struct CutResult {
  VertexSet cut;
  double weight = 0.0;  // capacity sum over `cut`
};

/// Minimum-weight vertex set separating S from T, by vertex splitting and
/// shortest-augmenting-path max-flow. Terminals are never cut.
///
/// Returns std::nullopt when no finite cut exists (some S-T path runs only
/// through terminals and INFINITE vertices). Throws DomainError if S or T is
/// empty, they intersect, or they are not subsets of V(g).
std::optional<CutResult> min_st_vertex_cut(const Graph& g, const VertexSet& s, const VertexSet& t,
                                           const CapacityAssignment& cap);

/// 2-approximate 3-way vertex cut: computes the isolating cut of each terminal
/// set against the union of the other two and returns the union of the two
/// cheapest. std::nullopt when any isolating cut is impossible.
std::optional<CutResult> three_way_cut_2approx(const Graph& g, const VertexSet& a,
                                               const VertexSet& b, const VertexSet& c,
                                               const CapacityAssignment& cap);

/// True iff no path joins `from` to `to` in g - removed.
bool separates(const Graph& g, const VertexSet& removed, const VertexSet& from, const VertexSet& to);

}  // namespace jta
