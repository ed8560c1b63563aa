import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from helpers import pw_instance, tw3_instance
from listec.catalogue import CATALOGUE
from listec.decomp import from_path, validate
from listec.errors import InputError
from listec.generate import (all_three_trees, aux_instance, fig1_graph, random_ktree, random_lists,
                             twins_instance, uniform_lists)
from listec.graph import Graph, ekey
from listec.oracle import verify_colouring
from listec.solver import (AUX_GRAPH, CATALOGUE as CATALOGUE_STEP, EDGE_REDUCTION, PW3_L6, PW4_L10,
                           THREE_TREE, TW3_L7, SolveRequest, build_aux_graph, clique_path,
                           list_bound_issue, solve, solve_graph)


def ok(g, lists, regime, d=None):
    col, trace = solve_graph(g, lists, regime, d)
    assert verify_colouring(g, lists, col) == []
    return trace


def test_empty_and_edgeless():
    assert solve_graph(Graph(), {}, TW3_L7)[0] == {}
    assert solve_graph(Graph([1, 2, 3]), {}, PW3_L6)[0] == {}


def test_three_tree_catalogue_route():
    t = ok(CATALOGUE["a"], uniform_lists(CATALOGUE["a"], 3, seed=1), THREE_TREE)
    assert t.route == CATALOGUE_STEP and t.counts() == {CATALOGUE_STEP: 1}
    g = fig1_graph()
    for s in range(20):
        t = ok(g, uniform_lists(g, 5, seed=s, universe=8), THREE_TREE)
        assert t.steps[0].detail == "b"


def test_three_tree_catalogue_needs_chromatic_index():
    g = fig1_graph()
    with pytest.raises(InputError, match="needs 5"):
        solve_graph(g, uniform_lists(g, 4, seed=0), THREE_TREE)


def test_three_tree_routes():
    g = random_ktree(40, 3, seed=1)
    assert g.max_degree() >= 7
    t = ok(g, random_lists(g, 7, seed=1), THREE_TREE)
    assert t.route == TW3_L7
    for g in all_three_trees(9):
        if g.max_degree() == 6 and g.n() == 9:
            t = ok(g, uniform_lists(g, 6, seed=2), THREE_TREE)
            assert t.route == PW3_L6


def test_three_tree_rejects_other_graphs():
    with pytest.raises(InputError):
        solve_graph(Graph((), [(0, 1)]), {(0, 1): {1}}, THREE_TREE)


def test_short_list_names_the_edge():
    g = random_ktree(12, 3, seed=4)
    lists = random_lists(g, 7, seed=4)
    e = g.edges[3]
    lists[e] = frozenset(sorted(lists[e])[:-1])
    bad = list_bound_issue(g, lists, 7)
    assert bad is not None
    with pytest.raises(InputError, match=f"{bad[0][0]}-{bad[0][1]}"):
        solve_graph(g, lists, TW3_L7)


def test_rejects_width_and_bad_decomposition():
    k5 = Graph(range(5), [(a, b) for a in range(5) for b in range(a + 1, 5)])
    with pytest.raises(InputError, match="tree-width"):
        solve_graph(k5, random_lists(k5, 7, seed=0), TW3_L7)
    p = Graph(range(3), [(0, 1), (1, 2)])
    with pytest.raises(InputError, match="invalid"):
        solve_graph(p, random_lists(p, 6, seed=0), PW3_L6, from_path([[0, 1]]))
    with pytest.raises(InputError):
        solve_graph(p, random_lists(p, 6, seed=0), "NOPE")


def test_supplied_decomposition_is_used():
    g, d, lists = pw_instance(5, 4)
    col, _ = solve_graph(g, lists, PW4_L10, d)
    assert verify_colouring(g, lists, col) == []


def test_auxiliary_graph_route():
    g, d = aux_instance()
    for s in range(20):
        assert ok(g, random_lists(g, 10, seed=s), PW4_L10).counts().get(AUX_GRAPH) == 1


def test_twins_route():
    g, d = twins_instance()
    for s in range(20):
        assert ok(g, random_lists(g, 10, seed=s), PW4_L10).counts().get("SUBSTRUCTURE:PW4_TWINS") == 1


def test_build_aux_graph_shape():
    # u=0, v1..v3 = 1..3 form K4 after W is removed
    g1 = Graph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    roles = {"u": 0, "v1": 1, "v2": 2, "v3": 3, "w1": 9}
    lists = {e: frozenset({1, 2, 3}) for e in g1.edges}
    for x in range(4):
        lists[ekey(x, 9)] = frozenset({5 + x, 10})
    g_star, l_star, p = build_aux_graph(g1, {0, 1, 2, 3}, roles, lists)
    assert g_star.n() == 6 and g_star.m() == 6 + 8
    assert l_star[ekey(p[0], 2)] == l_star[ekey(p[1], 2)] == frozenset({7, 10})


def test_trace_edges_reduce_first():
    g = random_ktree(30, 3, seed=7)
    t = ok(g, random_lists(g, 7, seed=7), TW3_L7)
    assert t.steps and t.steps[0].kind == EDGE_REDUCTION
    assert all(s.depth >= 0 for s in t.steps)


def test_determinism():
    g, lists = tw3_instance(11)
    a = solve(SolveRequest(g, lists, TW3_L7, seed=1))
    b = solve(SolveRequest(g, lists, TW3_L7, seed=1))
    assert a[0] == b[0] and a[1].steps == b[1].steps


def test_clique_path():
    g = random_ktree(20, 3, seed=3)
    d = clique_path(Graph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)]))
    assert d is not None and d.width == 3
    for h in all_three_trees(10):
        got = clique_path(h)
        if got is not None:
            assert got.shape == "path" and validate(h, got) == [] and got.width == 3
    assert clique_path(Graph(range(3), [(0, 1)])) is None
    assert clique_path(g) is None or validate(g, clique_path(g)) == []


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10 ** 6))
def test_tw3_property(seed):
    g, lists = tw3_instance(seed)
    ok(g, lists, TW3_L7)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4]))
def test_pathwidth_property(seed, k):
    g, d, lists = pw_instance(seed, k)
    ok(g, lists, PW3_L6 if k == 3 else PW4_L10, d)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_longer_lists_still_work(seed):
    rng = random.Random(seed)
    g, lists = tw3_instance(seed)
    extra = {e: frozenset(s | set(rng.sample(range(100, 140), 3))) for e, s in lists.items()}
    ok(g, extra, TW3_L7)
