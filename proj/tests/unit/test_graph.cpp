#include <doctest.h>

#include "brute.hpp"
#include "jtapprox/errors.hpp"
#include "jtapprox/graph.hpp"
#include "jtapprox/oracle.hpp"

using namespace jta;

TEST_SUITE("graph") {
  TEST_CASE("parse the smallest nonempty graph") {
    const Graph g = parse_graph("p tw 2 1\n1 2\n");
    CHECK(g.vertices() == std::vector<Vertex>{1, 2});
    CHECK(g.edges() == std::vector<Edge>{{1, 2}});
  }

  TEST_CASE("parse a chain with comments") {
    const Graph g = parse_graph("c chain a-b-c-d-e\np tw 5 4\n1 2\nc middle\n2 3\n3 4\n4 5\n");
    CHECK(g == brute::path(5));
  }

  TEST_CASE("duplicate edge lines collapse") {
    const Graph g = parse_graph("p tw 3 3\n1 2\n2 1\n2 3\n");
    CHECK(g.num_edges() == 2);
  }

  TEST_CASE("parse errors name the line") {
    auto line_of = [](const char* text) {
      try {
        parse_graph(text);
      } catch (const ParseError& e) {
        return e.line();
      }
      return std::size_t{0};
    };
    CHECK(line_of("p tw 3 1\n1 1\n") == 2);         // self-loop
    CHECK(line_of("p tw 3 1\n1 4\n") == 2);         // out of range
    CHECK(line_of("p td 3 1\n1 2\n") == 1);         // malformed header
    CHECK(line_of("p tw 3 1\n1\n") == 2);           // malformed edge
    CHECK(line_of("1 2\np tw 3 1\n") == 1);         // edge before header
    CHECK(line_of("p tw 3 1\np tw 3 1\n1 2\n") == 2);
    CHECK_THROWS_AS(parse_graph("p tw 3 2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("c nothing\n"), ParseError);
  }

  TEST_CASE("write then parse round-trips") {
    const Graph g = brute::grid(3, 3);
    CHECK(parse_graph(write_graph(g)) == g);
  }

  TEST_CASE("constructor rejects self-loops and unknown endpoints") {
    const std::vector<Edge> loop{{1, 1}};
    const std::vector<Edge> unknown{{1, 9}};
    CHECK_THROWS_AS(Graph({1, 2}, loop), DomainError);
    CHECK_THROWS_AS(Graph({1, 2}, unknown), DomainError);
  }

  TEST_CASE("induced subgraph examples") {
    const Graph chain = brute::path(5);
    CHECK(induced_subgraph(chain, {1, 2, 3}) == brute::path(3));
    const Graph independent = induced_subgraph(chain, {1, 3, 5});
    CHECK(independent.num_vertices() == 3);
    CHECK(independent.num_edges() == 0);
    const Graph k3 = induced_subgraph(brute::complete(4), {1, 2, 4});
    CHECK(k3.num_edges() == 3);
    CHECK(induced_subgraph(chain, chain.vertex_set()) == chain);
    CHECK_THROWS_AS(induced_subgraph(chain, {1, 7}), DomainError);
  }

  TEST_CASE("connected components") {
    const Graph chain = brute::path(5);
    const auto parts = connected_components(induced_subgraph(chain, {1, 2, 4, 5}));
    CHECK(parts == std::vector<VertexSet>{{1, 2}, {4, 5}});
    CHECK(connected_components(brute::complete(4)).size() == 1);
    CHECK(connected_components(Graph({1, 2, 3})) == std::vector<VertexSet>{{1}, {2}, {3}});
  }

  TEST_CASE("components partition V and no edge crosses them") {
    for (const Graph& g : brute::corpus(60, 1, 12, 11)) {
      const auto parts = connected_components(g);
      std::size_t total = 0;
      std::map<Vertex, std::size_t> where;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        total += parts[i].size();
        for (Vertex v : parts[i]) where[v] = i;
        if (i > 0) CHECK(*parts[i - 1].begin() < *parts[i].begin());
      }
      CHECK(total == g.num_vertices());
      for (const auto& [u, v] : g.edges()) CHECK(where[u] == where[v]);
    }
  }

  TEST_CASE("strip simplicial") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 12; ++n) {
      const auto s = strip_simplicial(brute::random_tree(n, rng));
      CHECK(s.residual.empty());
      CHECK(s.removed.size() == static_cast<std::size_t>(n));
    }
    const auto c5 = strip_simplicial(brute::cycle(5));
    CHECK(c5.removed.empty());
    CHECK(c5.residual == brute::cycle(5));
    // Two pendant vertices a=1, b=2 hanging off c=3 of a chordless 5-cycle.
    const std::vector<Edge> edges{{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 3}};
    const auto stripped = strip_simplicial(Graph({1, 2, 3, 4, 5, 6, 7}, edges));
    CHECK(stripped.removed == std::vector<Vertex>{1, 2});
  }

  TEST_CASE("residual of strip_simplicial has no simplicial vertex") {
    for (const Graph& g : brute::corpus(80, 1, 10, 5)) {
      const auto s = strip_simplicial(g);
      for (Vertex v : s.residual.vertices()) {
        const auto nb = s.residual.neighbors(v);
        CHECK_FALSE(is_clique(s.residual, VertexSet(nb.begin(), nb.end())));
      }
    }
  }

  TEST_CASE("strip_simplicial never increases cliquewidth") {
    for (const Graph& g : brute::corpus(60, 1, 10, 6)) {
      CHECK(exact_cliquewidth(strip_simplicial(g).residual) <= exact_cliquewidth(g));
    }
  }

  TEST_CASE("add_clique_edges") {
    const auto tri = add_clique_edges(brute::path(3), {1, 3});
    CHECK(tri.added == EdgeSet{{1, 3}});
    CHECK(tri.graph == brute::complete(3));
    CHECK(add_clique_edges(brute::complete(4), {1, 2, 3, 4}).added.empty());
    CHECK(add_clique_edges(brute::path(5), {2, 4}).added == EdgeSet{{2, 4}});
    CHECK_THROWS_AS(add_clique_edges(brute::path(3), {0}), DomainError);
  }

  TEST_CASE("add_clique_edges is idempotent") {
    for (const Graph& g : brute::corpus(30, 2, 9, 8)) {
      const VertexSet s{g.vertices().front(), g.vertices().back()};
      const auto once = add_clique_edges(g, s);
      const auto twice = add_clique_edges(once.graph, s);
      CHECK(twice.graph == once.graph);
      CHECK(twice.added.empty());
    }
  }

  TEST_CASE("state space parsing and weights") {
    const Graph g = brute::path(3);
    const StateSpace ss = parse_state_space("c sizes\n1 4\n3 3\n", g);
    CHECK(ss.size(1) == 4);
    CHECK(ss.size(2) == 2);
    CHECK(ss.weight(1) == doctest::Approx(2.0));
    CHECK(ss.weight(2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_state_space("1 1\n", g), ParseError);
    CHECK_THROWS_AS(parse_state_space("9 3\n", g), ParseError);
    CHECK_THROWS_AS(parse_state_space("1\n", g), ParseError);
    CHECK(parse_state_space(write_state_space(ss), g).sizes() == ss.sizes());
    CHECK_THROWS_AS(StateSpace().require_covers(g), DomainError);
  }

  TEST_CASE("measures") {
    const Graph g = brute::path(3);
    StateSpace ss = StateSpace::uniform(g, 8);
    CHECK(Measure::cardinality().of_all(g.vertices()) == 3.0);
    CHECK(Measure::weighted(ss).of_all(g.vertices()) == doctest::Approx(9.0));
  }
}
