import pytest

from helpers import substructure_instance
from listec.catalogue import CATALOGUE
from listec.decomp import TreeDecomposition, decompose_pw, from_path
from listec.errors import ContractError, InvariantViolation
from listec.generate import all_three_trees, fig1_graph, random_ktree
from listec.graph import Graph
from listec.substructure import (BIG_W, FIG4A, FIG4B, FIG4C, FIG5, FIG6, PW4_MAXDEG3, PW4_MINDEG3,
                                 PW4_TWINS, Substructure, check_degree_sum, classify_pw3, classify_pw4,
                                 classify_tw3, degree_sum_violations, find_substructure, is_three_tree,
                                 match_small_3tree, path_extras, validate_substructure)

DUMMY = TreeDecomposition({0: []}, ())


def star(u, leaves):
    return [(u, x) for x in leaves]


def sub(w, u=0):
    return Substructure(frozenset(), frozenset(w), u, DUMMY, 0)


def test_degree_sum_examples():
    tri = Graph((), [(1, 2), (2, 3), (1, 3)])
    assert check_degree_sum(tri, 7) == (1, 2)
    assert degree_sum_violations(tri, 7) == [(1, 2), (1, 3), (2, 3)]
    k8 = Graph(range(8), [(a, b) for a in range(8) for b in range(a + 1, 8)])
    assert check_degree_sum(k8, 7) is None
    # a pendant edge always fails, however large the other end
    assert check_degree_sum(Graph((), star(0, range(1, 20))), 7) == (0, 1)
    assert check_degree_sum(_hub_graph(), 7) is None


def _hub_graph():
    # u=0 sees v1=1, v2=2 (adjacent) and w-vertices 3..8, each w also sees 1 and 2
    edges = [(0, 1), (0, 2), (1, 2)] + [(w, x) for w in range(3, 9) for x in (0, 1, 2)]
    return Graph((), edges)


def test_validate_substructure_conditions():
    g = _hub_graph()
    wit = from_path([[0, 1, 2]])
    good = Substructure(frozenset({0, 1, 2}), frozenset(range(3, 9)), 0, wit, 0)
    assert validate_substructure(g, good, 3, 7) == []
    bad = Substructure(frozenset({0, 1}), frozenset(range(3, 9)), 0, wit, 0)
    kinds = {i.kind for i in validate_substructure(g, bad, 3, 7)}
    assert {"a", "e"} <= kinds
    few = Substructure(frozenset({0, 1, 2, 3, 4, 5}), frozenset({6, 7, 8}), 0,
                       from_path([[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 2, 5]]), 0)
    assert {i.kind for i in validate_substructure(g, few, 3, 7)} == {"d", "h"}
    assert {"d", "f", "g"} <= {i.kind for i in validate_substructure(g, few, 3, 10)}
    wide = Substructure(frozenset({0, 1, 2}), frozenset(range(3, 9)), 0, from_path([[0, 1]]), 0)
    assert [i.kind for i in validate_substructure(g, wide, 3, 7)] == ["h"]
    assert {i.kind for i in validate_substructure(g, sub([]), 3, 7)} == {"structure"}


def test_path_extras():
    wit = from_path([[0, 1, 2], [1, 2]])
    s = Substructure(frozenset({0, 1, 2}), frozenset({3}), 0, wit, 0)
    assert path_extras(s, 3) == []
    s.node = 1
    assert path_extras(s, 3) == []
    s.v_set = frozenset({0, 1, 2, 9})
    assert [i.kind for i in path_extras(s, 3)] == ["path-size"]
    t = Substructure(frozenset({0}), frozenset({3}), 0, TreeDecomposition({0: [0]}, ()), 0)
    assert [i.kind for i in path_extras(t, 3)] == ["path-shape"]


def test_find_substructure_rejects_bad_input():
    tri = Graph((), [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(ContractError):
        find_substructure(tri, from_path([[1, 2, 3]]), 3, 7)
    with pytest.raises(ContractError):
        find_substructure(tri, from_path([[1, 2, 3]]), 4, 6)


def test_find_substructure_on_hub_graph():
    g = _hub_graph()
    d = from_path([[0, 1, 2, w] for w in range(3, 9)])
    s = find_substructure(g, d, 3, 7)
    assert s.u == 0 and validate_substructure(g, s, 3, 7) == []
    # the top bag of the hub keeps one w-vertex, which then sits in V
    assert s.w_set < frozenset(range(3, 9)) and len(s.w_set) == 5


def test_found_structures_satisfy_conditions():
    # the path-size promise is not always attainable; it is checked separately in the acceptance run
    for seed in range(150):
        g, d, k, l = substructure_instance(seed)
        s = find_substructure(g, d, k, l)
        assert validate_substructure(g, s, k, l) == [], seed
        if d.shape == "path":
            assert [i for i in path_extras(s, k) if i.kind != "path-size"] == []


# ---- classifiers on hand-built shapes

def test_classify_tw3_big_w():
    g = _hub_graph()
    assert classify_tw3(g, sub(range(3, 9))).tag == BIG_W


def _three_w(nbrs):
    # u=0, v-vertices 1,2,3, w-vertices 4,5,6; u also sees 7,8 to reach degree 6
    edges = star(0, [1, 2, 3, 4, 5, 6]) + [(w, v) for w, vs in zip((4, 5, 6), nbrs) for v in vs]
    if len(set().union(*map(set, nbrs))) == 2:
        edges = [e for e in edges if e != (0, 3)] + [(0, 7)]
    return Graph((), edges)


def test_classify_tw3_three_w_shapes():
    c = classify_tw3(_three_w([(1, 2), (1, 2), (1, 2)]), sub([4, 5, 6]))
    assert c.tag == FIG4A and {c.roles["v1"], c.roles["v2"]} == {1, 2}
    c = classify_tw3(_three_w([(1, 2), (2, 3), (1, 2)]), sub([4, 5, 6]))
    assert c.tag == FIG4B and c.roles["w2"] == 5 and c.roles["v2"] == 2
    c = classify_tw3(_three_w([(1, 2), (2, 3), (1, 3)]), sub([4, 5, 6]))
    assert c.tag == FIG4C
    r = c.roles
    g = _three_w([(1, 2), (2, 3), (1, 3)])
    assert g.neighbours(r["w2"]) == {0, r["v2"], r["v3"]}


def test_classify_tw3_rejects_impossible():
    g = Graph((), star(0, [1, 2, 3]))
    with pytest.raises(InvariantViolation):
        classify_tw3(g, sub([1, 2]))


def test_classify_pw3():
    # u=0; v1=1, v2=2; w1=3, w2=4; v'=5
    edges = star(0, [1, 2, 3, 4, 5]) + [(3, 1), (3, 2), (4, 1), (4, 2)]
    c = classify_pw3(Graph((), edges), sub([3, 4]))
    assert c.tag == FIG5 and c.roles == {"u": 0, "v1": 1, "v2": 2, "w1": 3, "w2": 4, "v'": 5}
    assert classify_pw3(Graph((), edges + [(0, 6), (6, 1), (6, 2)]), sub([3, 4, 6])).tag == BIG_W


def _pw4(wnbrs, extra=()):
    edges = [(0, w) for w in wnbrs] + [(w, v) for w, vs in wnbrs.items() for v in vs] + list(extra)
    return Graph((), edges)


def test_classify_pw4_tags():
    g = _pw4({10: (1,), 11: (2,), 12: (1, 2), 13: (2, 3)})
    assert classify_pw4(g, sub([10, 11, 12, 13])).tag == PW4_MAXDEG3
    g = _pw4({10: (1, 2, 3), 11: (1, 2), 12: (2, 3, 4), 13: (1, 3, 4), 14: (1, 2, 4), 15: (4,)})
    assert classify_pw4(g, sub([10, 11, 12, 13, 14, 15])).tag == PW4_MINDEG3
    g = _pw4({10: (1, 2, 3, 4), 11: (1,), 12: (1,), 13: (1, 2, 3, 4)})
    c = classify_pw4(g, sub([10, 11, 12, 13]))
    assert c.tag == PW4_TWINS and c.w_prime == {11, 12}
    g = _pw4({10: (1, 2, 3), 11: (1,), 12: (2,), 13: (3,)})
    c = classify_pw4(g, sub([10, 11, 12, 13]))
    assert c.tag == FIG6
    assert c.roles == {"u": 0, "w1": 10, "w2": 11, "v1": 1, "w3": 12, "v2": 2, "w4": 13, "v3": 3}


def test_classify_pw4_rejects_stray_pattern():
    g = _pw4({10: (1, 2, 3), 11: (1,), 12: (2,), 13: (7,)})
    with pytest.raises(InvariantViolation):
        classify_pw4(g, sub([10, 11, 12, 13]))


# ---- 3-trees

def test_three_tree_recognition():
    assert is_three_tree(CATALOGUE["a"])
    assert is_three_tree(random_ktree(30, 3, seed=2))
    assert not is_three_tree(Graph(range(5), [(a, b) for a in range(5) for b in range(a + 1, 5)]))
    assert not is_three_tree(Graph(range(4), [(0, 1), (1, 2), (2, 3)]))


def test_match_small_examples():
    assert match_small_3tree(CATALOGUE["a"].relabel({1: 9, 2: 8, 3: 7, 4: 6})) == "a"
    assert match_small_3tree(fig1_graph()) == "b"
    with pytest.raises(ContractError):
        match_small_3tree(Graph(range(4), [(0, 1)]))
    g = random_ktree(25, 3, seed=5)
    if g.max_degree() > 6:
        with pytest.raises(ContractError):
            match_small_3tree(g)


def test_small_3trees_are_catalogued_or_path_width_3():
    # [DERIVED] full enumeration up to 10 vertices, compared with exhaustive path-width search
    seen = set()
    for g in all_three_trees(10):
        cid = match_small_3tree(g)
        if cid is None:
            assert decompose_pw(g, 3) is not None
        else:
            seen.add(cid)
    assert seen == set(CATALOGUE)

