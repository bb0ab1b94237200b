#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "jtapprox/chordal.hpp"
#include "jtapprox/errors.hpp"
#include "jtapprox/minimize.hpp"
#include "jtapprox/oracle.hpp"
#include "jtapprox/triangulate.hpp"

using namespace jta;

namespace {

bool is_permutation_of(const std::vector<Vertex>& order, const Graph& g) {
  std::vector<Vertex> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  return sorted == g.vertices();
}

std::size_t minimized_largest_clique(const Graph& g, const TriangulationResult& r) {
  const auto kept = minimize_fill(g, r.fill_edges, r.ordering).kept;
  return clique_extremes(g.with_edges(kept), Measure::cardinality()).first;
}

}  // namespace

TEST_SUITE("triangulate") {
  TEST_CASE("chain at k = 1") {
    const Graph chain = brute::path(5);
    auto r = triangulate(chain, {}, 1);
    REQUIRE(r.success());
    CHECK(is_chordal(chain.with_edges(r.fill_edges)));
    CHECK(is_permutation_of(r.ordering, chain));
    CHECK(minimized_largest_clique(chain, r) == 2);
    CHECK(exact_cliquewidth(chain) == 2);
  }

  TEST_CASE("K5 at k = 1 fails") {
    auto r = triangulate(brute::complete(5), {}, 1);
    CHECK_FALSE(r.success());
    CHECK(r.fill_edges.empty());
  }

  TEST_CASE("preconditions") {
    const Graph chain = brute::path(5);
    CHECK_THROWS_AS(triangulate(chain, {1, 2, 3}, 1), DomainError);
    CHECK_THROWS_AS(triangulate(chain, {9}, 1), DomainError);
    CHECK_THROWS_AS(triangulate(chain, {}, 0), DomainError);
    const StateSpace ss = StateSpace::uniform(chain, 4);
    CHECK_THROWS_AS(w_triangulate(chain, {1, 2, 3}, 2.0, 2.0, ss), DomainError);
  }

  TEST_CASE("leaf completion") {
    CHECK(leaf_complete(brute::complete(4), {1, 2}).empty());
    CHECK(leaf_complete(brute::path(4), {2, 3}).empty());
    CHECK(leaf_complete(brute::cycle(4), {}).size() == 1);
    const auto c5 = leaf_complete(brute::cycle(5), {1, 2});
    CHECK(c5.size() == 2);
    CHECK(brute::min_fill_with_clique(brute::cycle(5), {1, 2}) == 2);
  }

  TEST_CASE("leaf completion cliques W, is chordal and beats cliquing V") {
    std::mt19937_64 rng(51);
    for (const Graph& g : brute::corpus(80, 1, 10, 52)) {
      std::vector<Vertex> vs = g.vertices();
      std::shuffle(vs.begin(), vs.end(), rng);
      const VertexSet w(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(vs.size() / 3));
      const auto fills = leaf_complete(g, w);
      const Graph h = g.with_edges(fills);
      CHECK(is_chordal(h));
      CHECK(is_clique(h, w));
      const std::size_t n = g.num_vertices();
      CHECK(fills.size() <= n * (n - 1) / 2 - g.num_edges());
    }
  }

  TEST_CASE("greedy minimum weight") {
    std::mt19937_64 rng(53);
    const Graph tree = brute::random_tree(9, rng);
    CHECK(greedy_min_weight(tree, StateSpace::uniform(tree, 3)).fill_edges.empty());
    const Graph c4 = brute::cycle(4);
    CHECK(greedy_min_weight(c4, StateSpace::uniform(c4, 2)).fill_edges.size() == 1);
    const std::vector<Edge> edges{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}};
    const Graph k4_minus(std::vector<Vertex>{1, 2, 3, 4}, edges);
    CHECK(greedy_min_weight(k4_minus, StateSpace::uniform(k4_minus, 2)).fill_edges.empty());
    for (const Graph& g : brute::corpus(40, 1, 10, 54)) {
      auto r = greedy_min_weight(g, StateSpace::uniform(g, 5));
      CHECK(is_chordal(g.with_edges(r.fill_edges)));
      CHECK(is_perfect_elimination_ordering(g.with_edges(r.fill_edges), r.ordering));
    }
  }

  TEST_CASE("clique bound and W cliqued on random instances") {
    std::mt19937_64 rng(55);
    for (const Graph& g : brute::corpus(120, 1, 10, 56)) {
      for (int k = 1; k <= 3; ++k) {
        std::vector<Vertex> vs = g.vertices();
        std::shuffle(vs.begin(), vs.end(), rng);
        const std::size_t w_size = std::min<std::size_t>(vs.size(), static_cast<std::size_t>(rng() % (3 * k)));
        const VertexSet w(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(w_size));
        auto r = triangulate(g, w, k, 2.0, TriangulateOptions{true, false});
        if (!r.success()) {
          CHECK(exact_cliquewidth(g) > static_cast<std::size_t>(k));
          continue;
        }
        const Graph h = g.with_edges(r.fill_edges);
        CHECK(brute::chordal_by_induced_cycles(h));
        CHECK(is_clique(h, w));
        CHECK(r.largest_clique_size < static_cast<std::size_t>(5 * k));
        CHECK(is_permutation_of(r.ordering, g));
      }
    }
  }

  TEST_CASE("weighted with size 2 everywhere matches cardinality") {
    for (const Graph& g : brute::corpus(60, 1, 10, 57)) {
      const StateSpace ss = StateSpace::uniform(g, 2);
      for (int k = 1; k <= 2; ++k) {
        auto rc = triangulate(g, {}, k);
        auto rw = w_triangulate(g, {}, k, 2.0, ss);
        CHECK(rc.success() == rw.success());
        CHECK(rc.fill_edges == rw.fill_edges);
        CHECK(rc.ordering == rw.ordering);
      }
    }
  }

  TEST_CASE("weighted chain of size-3 vertices") {
    const Graph chain = brute::path(5);
    const StateSpace ss = StateSpace::uniform(chain, 3);
    auto esc = escalate(chain, 2.0, EscalationPolicy{0.0, Jump::kWeightedMargin}, &ss);
    const auto kept = minimize_fill(chain, esc.result.fill_edges, esc.result.ordering).kept;
    const auto [size, weight] = clique_extremes(chain.with_edges(kept), Measure::weighted(ss));
    CHECK(size == 2);
    CHECK(weight == doctest::Approx(2 * std::log2(3.0)));
  }

  TEST_CASE("weighted clique bound on random instances") {
    std::mt19937_64 rng(58);
    std::uniform_int_distribution<int> size(2, 4);
    for (const Graph& g : brute::corpus(80, 1, 8, 59)) {
      StateSpace ss;
      for (Vertex v : g.vertices()) ss.set(v, size(rng));
      for (double m : {1.5, 2.5, 4.0}) {
        auto r = w_triangulate(g, {}, m, 2.0, ss);
        if (!r.success()) {
          CHECK(exact_weighted_cliquewidth(g, ss) > m - kTolerance);
          continue;
        }
        CHECK(r.heaviest_clique_weight < 5 * m + kTolerance);
        CHECK(is_chordal(g.with_edges(r.fill_edges)));
      }
    }
  }

  TEST_CASE("escalate on a tree") {
    std::mt19937_64 rng(60);
    const Graph tree = brute::random_tree(7, rng);
    auto esc = escalate(tree, 2.0, EscalationPolicy{});
    CHECK(esc.threshold == 1.0);
    CHECK(minimized_largest_clique(tree, esc.result) == 2);
  }

  TEST_CASE("escalate on the 3x3 grid") {
    const Graph grid = brute::grid(3, 3);
    for (Jump jump : {Jump::kIncrement, Jump::kKStar}) {
      auto esc = escalate(grid, 2.0, EscalationPolicy{0.0, jump});
      REQUIRE(esc.result.success());
      CHECK(esc.result.largest_clique_size < 5 * esc.threshold);
      if (esc.last_failed) CHECK(exact_cliquewidth(grid) > *esc.last_failed);
      CHECK(esc.lower_bound <= 4.0);
      REQUIRE(esc.result.ratio_bound);
      CHECK(*esc.result.ratio_bound <= 5.0);
    }
    CHECK(exact_cliquewidth(grid) == 4);
  }

  TEST_CASE("escalation thresholds and lower bounds") {
    for (const Graph& g : brute::corpus(60, 2, 10, 61)) {
      const std::size_t cw = exact_cliquewidth(g);
      auto inc = escalate(g, 2.0, EscalationPolicy{});
      auto kstar = escalate(g, 2.0, EscalationPolicy{0.0, Jump::kKStar});
      for (const auto* esc : {&inc, &kstar}) {
        CHECK(esc->result.success());
        CHECK(esc->lower_bound <= static_cast<double>(cw));
        if (esc->last_failed) CHECK(static_cast<double>(cw) > *esc->last_failed);
        CHECK(esc->result.largest_clique_size >= cw);
      }
      if (inc.last_failed) CHECK(inc.threshold == *inc.last_failed + 1);
    }
  }

  TEST_CASE("weighted escalation lower bound is certified") {
    std::mt19937_64 rng(62);
    std::uniform_int_distribution<int> size(2, 6);
    for (const Graph& g : brute::corpus(30, 2, 8, 63)) {
      StateSpace ss;
      for (Vertex v : g.vertices()) ss.set(v, size(rng));
      auto esc = escalate(g, 2.0, EscalationPolicy{0.0, Jump::kWeightedMargin}, &ss);
      const double opt = exact_weighted_cliquewidth(g, ss);
      CHECK(esc.result.success());
      CHECK(esc.lower_bound <= opt + kTolerance);
      CHECK(esc.result.heaviest_clique_weight + kTolerance >= opt);
      CHECK(esc.result.heaviest_clique_weight < 5 * esc.threshold + kTolerance);
    }
  }

  TEST_CASE("trace statistics") {
    auto r = triangulate(brute::grid(4, 4), {}, 3);
    CHECK(r.trace.nodes >= 1);
    if (r.success() && r.trace.nodes > 1) CHECK(r.trace.depth >= 1);
  }
}
