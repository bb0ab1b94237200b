import math

import pytest

import jtapprox as jt


def chain():
    return jt.Graph([1, 2, 3, 4, 5], [(1, 2), (2, 3), (3, 4), (4, 5)])


def cycle(n):
    return jt.Graph(list(range(1, n + 1)), [(i, i % n + 1) for i in range(1, n + 1)])


def test_graph_basics():
    g = chain()
    assert len(g) == 5
    assert g.num_edges == 4
    assert g.adjacent(2, 3) and not g.adjacent(1, 3)
    assert sorted(g.neighbors(3)) == [2, 4]
    again = jt.parse_graph(g.to_gr())
    assert again.edges == g.edges


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        jt.parse_graph("p tw 2 1\n1 5\n")


def test_cuts():
    g = cycle(6)
    cut, weight = jt.min_st_vertex_cut(g, {1}, {4})
    assert weight == 2 and len(cut) == 2
    assert jt.min_st_vertex_cut(g, {1}, {2}) is None
    approx = jt.three_way_cut_2approx(g, {1}, {3}, {5})
    best = jt.optimal_three_way_cut(g, {1}, {3}, {5})
    assert best[1] <= approx[1] <= 2 * best[1]


def test_chain_decomposition():
    g = chain()
    x, a, b, c = jt.find_w_decomposition(g, {2, 4}, 1)
    assert jt.is_w_decomposition(g, (x, a, b, c), {2, 4}, 1)
    assert jt.is_w_decomposition(g, ({3}, {1, 2}, {4, 5}, set()), {2, 4}, 1)
    assert not jt.is_w_decomposition(g, ({4}, {1, 2, 3}, {5}, set()), {2, 3}, 1)


def test_triangulate_and_oracle():
    g = cycle(8)
    assert jt.exact_cliquewidth(g) == 3
    low = jt.triangulate(g, set(), 1)
    assert not low["success"] or low["largest_clique_size"] < 5
    esc = jt.escalate(g)
    assert esc["largest_clique_size"] < 5 * esc["threshold"]
    h = jt.Graph(g.vertices, list(g.edges) + list(esc["fill_edges"]))
    assert jt.check_chordal(h)["chordal"]
    mini = jt.minimize_fill(g, esc["fill_edges"], esc["ordering"])
    assert len(mini["kept"]) == 5


def test_weighted():
    g = cycle(5)
    ss = jt.StateSpace({v: 2 + v % 3 for v in range(1, 6)})
    best = jt.exact_weighted_cliquewidth(g, ss)
    esc = jt.escalate(g, ss)
    assert best <= esc["heaviest_clique_weight"] + 1e-9
    assert esc["heaviest_clique_weight"] < 5 * esc["threshold"] + 1e-9
    greedy = jt.greedy_min_weight(g, ss)
    assert greedy["heaviest_clique_weight"] >= best - 1e-9


def test_pipeline_report():
    g, ss = jt.random_instance(20, 40, seed=7)
    report = jt.run_pipeline(g, ss)
    for field in ("n", "m", "k_accepted", "l", "ratio_bound", "M", "T", "fills_before",
                  "fills_after", "wall_ms"):
        assert field in report
    assert report["n"] == 20 and report["m"] == 40
    assert report["M"] <= report["T"] <= report["M"] + math.log2(len(report["bags"])) + 1e-9
    assert report["td"].startswith("s td")
    card = jt.run_pipeline(chain())
    assert card["l"] == 2 and card["fills_after"] == 0
