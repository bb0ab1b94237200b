#include <doctest.h>

#include "brute.hpp"
#include "jtapprox/cuts.hpp"
#include "jtapprox/errors.hpp"
#include "jtapprox/oracle.hpp"

using namespace jta;

namespace {

CapacityAssignment unit_with_infinite(const Graph& g, const VertexSet& inf) {
  auto cap = CapacityAssignment::unit(g);
  cap.set_infinite(inf);
  return cap;
}

}  // namespace

TEST_SUITE("cuts") {
  TEST_CASE("capacities") {
    CHECK_THROWS_AS(Capacity::finite(0.0), DomainError);
    CHECK_THROWS_AS(Capacity::finite(-1.0), DomainError);
    CHECK(Capacity::infinite().is_infinite());
    CHECK_THROWS_AS(CapacityAssignment().at(1), DomainError);
  }

  TEST_CASE("path connectivity is one") {
    const Graph chain = brute::path(5);
    auto r = min_st_vertex_cut(chain, {1}, {5}, CapacityAssignment::unit(chain));
    REQUIRE(r);
    CHECK(r->weight == 1.0);
    CHECK(r->cut.size() == 1);
    CHECK((r->cut == VertexSet{2} || r->cut == VertexSet{3} || r->cut == VertexSet{4}));
  }

  TEST_CASE("chain split at the middle vertex") {
    const Graph chain = brute::path(5);
    auto r = min_st_vertex_cut(chain, {1, 2}, {4, 5}, unit_with_infinite(chain, {1, 2, 4, 5}));
    REQUIRE(r);
    CHECK(r->cut == VertexSet{3});
    CHECK(r->weight == 1.0);
  }

  TEST_CASE("adjacent terminals are uncuttable") {
    const Graph k4 = brute::complete(4);
    CHECK_FALSE(min_st_vertex_cut(k4, {1}, {2}, CapacityAssignment::unit(k4)));
  }

  TEST_CASE("infinite interior path is uncuttable") {
    const Graph chain = brute::path(3);
    CHECK_FALSE(min_st_vertex_cut(chain, {1}, {3}, unit_with_infinite(chain, {2})));
  }

  TEST_CASE("2x3 grid opposite corners") {
    const Graph g = brute::grid(2, 3);
    const auto cap = CapacityAssignment::unit(g);
    auto r = min_st_vertex_cut(g, {1}, {6}, cap);
    REQUIRE(r);
    CHECK(r->weight == 2.0);
    CHECK(*brute::min_vertex_cut_weight(g, {1}, {6}, cap) == 2.0);
    CHECK(separates(g, r->cut, {1}, {6}));
  }

  TEST_CASE("terminal set errors") {
    const Graph g = brute::path(4);
    const auto cap = CapacityAssignment::unit(g);
    CHECK_THROWS_AS(min_st_vertex_cut(g, {}, {4}, cap), DomainError);
    CHECK_THROWS_AS(min_st_vertex_cut(g, {1, 2}, {2, 4}, cap), DomainError);
    CHECK_THROWS_AS(min_st_vertex_cut(g, {1}, {9}, cap), DomainError);
    CHECK_THROWS_AS(min_st_vertex_cut(g, {1}, {4}, CapacityAssignment()), DomainError);
  }

  TEST_CASE("min cut matches brute force with random weights") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> w(1.0, 4.5);
    int checked = 0;
    for (const Graph& g : brute::corpus(150, 3, 10, 22)) {
      CapacityAssignment cap;
      for (Vertex v : g.vertices()) cap.set(v, Capacity::finite(w(rng)));
      const Vertex s = g.vertices().front();
      const Vertex t = g.vertices().back();
      auto r = min_st_vertex_cut(g, {s}, {t}, cap);
      auto expect = brute::min_vertex_cut_weight(g, {s}, {t}, cap);
      REQUIRE(r.has_value() == expect.has_value());
      if (!r) continue;
      ++checked;
      CHECK(r->weight == doctest::Approx(*expect).epsilon(1e-12));
      CHECK(separates(g, r->cut, {s}, {t}));
      CHECK_FALSE(r->cut.count(s));
      CHECK_FALSE(r->cut.count(t));
    }
    CHECK(checked > 50);
  }

  TEST_CASE("Menger duality") {
    int checked = 0;
    for (const Graph& g : brute::corpus(120, 3, 10, 23)) {
      const Vertex s = g.vertices().front();
      const Vertex t = g.vertices().back();
      if (g.adjacent(s, t)) continue;
      auto r = min_st_vertex_cut(g, {s}, {t}, CapacityAssignment::unit(g));
      REQUIRE(r);
      CHECK(static_cast<int>(r->weight) == brute::max_disjoint_paths(g, s, t));
      ++checked;
    }
    CHECK(checked > 40);
  }

  TEST_CASE("3-way cut on a star") {
    const Graph g = brute::star(3);
    auto r = three_way_cut_2approx(g, {2}, {3}, {4}, CapacityAssignment::unit(g));
    REQUIRE(r);
    CHECK(r->cut == VertexSet{1});
    CHECK(r->weight == 1.0);
  }

  TEST_CASE("3-way cut on a chain") {
    const Graph g = brute::path(5);
    auto r = three_way_cut_2approx(g, {1}, {3}, {5}, CapacityAssignment::unit(g));
    REQUIRE(r);
    CHECK(r->cut == VertexSet{2, 4});
    CHECK(r->weight == 2.0);
    CHECK(optimal_three_way_cut(g, {1}, {3}, {5}, CapacityAssignment::unit(g))->weight == 2.0);
  }

  TEST_CASE("3-way cut where two pairwise cuts do not suffice") {
    // B-z-C, B-x-A, A-y-C: the A|B and A|C cuts coincide at {x, y}.
    // A=1, B=2, C=3, x=4, y=5, z=6.
    const std::vector<Edge> edges{{2, 6}, {6, 3}, {2, 4}, {4, 1}, {1, 5}, {5, 3}};
    const Graph g({1, 2, 3, 4, 5, 6}, edges);
    auto r = three_way_cut_2approx(g, {1}, {2}, {3}, CapacityAssignment::unit(g));
    REQUIRE(r);
    CHECK(separates(g, r->cut, {1}, {2}));
    CHECK(separates(g, r->cut, {1}, {3}));
    CHECK(separates(g, r->cut, {2}, {3}));
    CHECK(r->weight <= 2 * optimal_three_way_cut(g, {1}, {2}, {3}, CapacityAssignment::unit(g))->weight);
  }

  TEST_CASE("3-way cut is uncuttable on a triangle") {
    const Graph g = brute::complete(3);
    CHECK_FALSE(three_way_cut_2approx(g, {1}, {2}, {3}, CapacityAssignment::unit(g)));
  }

  TEST_CASE("3-way cut bounds against pairwise cuts and the optimum") {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (const Graph& g : brute::corpus(240, 4, 11, 32)) {
      std::vector<Vertex> vs = g.vertices();
      std::shuffle(vs.begin(), vs.end(), rng);
      const VertexSet a{vs[0]}, b{vs[1]}, c{vs[2]};
      auto cap = CapacityAssignment::unit(g);
      cap.set_infinite({vs[0], vs[1], vs[2]});
      auto r = three_way_cut_2approx(g, a, b, c, cap);
      auto opt = optimal_three_way_cut(g, a, b, c, cap);
      CHECK(r.has_value() == opt.has_value());
      if (!r) continue;
      ++checked;
      CHECK(separates(g, r->cut, a, b));
      CHECK(separates(g, r->cut, a, c));
      CHECK(separates(g, r->cut, b, c));
      CHECK(opt->weight <= r->weight + kTolerance);
      CHECK(r->weight <= 2 * opt->weight + kTolerance);
      const double ab = min_st_vertex_cut(g, a, b, cap)->weight;
      const double ac = min_st_vertex_cut(g, a, c, cap)->weight;
      const double bc = min_st_vertex_cut(g, b, c, cap)->weight;
      CHECK(r->weight + kTolerance >= std::max({ab, ac, bc}));
      VertexSet bc_set = b;
      bc_set.insert(c.begin(), c.end());
      VertexSet ab_set = a;
      ab_set.insert(b.begin(), b.end());
      VertexSet ac_set = a;
      ac_set.insert(c.begin(), c.end());
      std::array<double, 3> iso{min_st_vertex_cut(g, a, bc_set, cap)->weight,
                                min_st_vertex_cut(g, b, ac_set, cap)->weight,
                                min_st_vertex_cut(g, c, ab_set, cap)->weight};
      std::sort(iso.begin(), iso.end());
      CHECK(r->weight <= iso[0] + iso[1] + kTolerance);
    }
    CHECK(checked > 30);
  }
}
