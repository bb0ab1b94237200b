"""Junction-tree triangulation with a constant-factor clique bound."""

from ._core import (
    DomainError,
    Graph,
    InternalError,
    OracleRefused,
    ParseError,
    StateSpace,
    check_chordal,
    escalate,
    exact_cliquewidth,
    exact_weighted_cliquewidth,
    find_w_decomposition,
    greedy_min_weight,
    is_w_decomposition,
    min_st_vertex_cut,
    minimize_fill,
    optimal_three_way_cut,
    parse_graph,
    random_instance,
    run_pipeline,
    strip_simplicial,
    three_way_cut_2approx,
    triangulate,
    w_triangulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
