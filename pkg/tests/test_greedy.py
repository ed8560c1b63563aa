from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from listec.errors import ContractError, GreedyFailure
from listec.graph import Graph
from listec.greedy import colour_trident, compatible_pair, semi_greedy
from listec.oracle import verify_colouring


def test_semi_greedy_examples():
    one = Graph([1, 2], [(1, 2)])
    assert semi_greedy(one, {(1, 2): {7}}) == {(1, 2): 7}
    p3 = Graph([1, 2, 3], [(1, 2), (2, 3)])
    assert semi_greedy(p3, {(1, 2): {1}, (2, 3): {1, 2}}) == {(1, 2): 1, (2, 3): 2}
    tri = Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(GreedyFailure):
        semi_greedy(tri, {e: {1, 2} for e in tri.edges})


def test_semi_greedy_keeps_partial():
    p3 = Graph([1, 2, 3], [(1, 2), (2, 3)])
    assert semi_greedy(p3, {(1, 2): {1, 2}, (2, 3): {1, 2}}, {(1, 2): 2}) == {(1, 2): 2, (2, 3): 1}


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_semi_greedy_succeeds_when_lists_exceed_degree_sum(n, rng):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    g = Graph(range(n), rng.sample(pairs, rng.randint(1, len(pairs))))
    lists = {}
    for a, b in g.edges:
        k = g.degree(a) + g.degree(b) - 1
        lists[(a, b)] = frozenset(rng.sample(range(1, 2 * k + 2), k))
    assert verify_colouring(g, lists, semi_greedy(g, lists)) == []


# e = 1-2, f = 3-4, four edges meet both
SQUARE = Graph([1, 2, 3, 4], [(1, 2), (3, 4), (1, 3), (1, 4), (2, 3), (2, 4)])


def test_compatible_pair_examples():
    lists = {(1, 2): {1, 2, 3}, (3, 4): {1, 4, 5}}
    lists.update({e: {6, 7, 8} for e in SQUARE.edges if e not in lists})
    assert compatible_pair(SQUARE, lists, (1, 2), (3, 4)) == (1, 1)
    lists = {(1, 2): {1, 2, 3}, (3, 4): {4, 5, 6}, (1, 3): {1, 4, 2}, (1, 4): {2, 5, 3},
             (2, 3): {3, 6, 1}, (2, 4): {1, 5, 9}}
    c1, c2 = compatible_pair(SQUARE, lists, (1, 2), (3, 4))
    assert all(not (c1 in lists[h] and c2 in lists[h]) for h in [(1, 3), (1, 4), (2, 3), (2, 4)])
    with pytest.raises(ContractError):
        compatible_pair(SQUARE, lists, (1, 2), (1, 3))


def test_compatible_pair_can_be_blocked():
    # [DERIVED] brute force: each of the four 2x2 candidate pairs is covered by one cross edge
    lists = {(1, 2): {1, 2}, (3, 4): {3, 4}, (1, 3): {1, 3}, (1, 4): {1, 4}, (2, 3): {2, 3}, (2, 4): {2, 4}}
    assert compatible_pair(SQUARE, lists, (1, 2), (3, 4)) is None


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_compatible_pair_exists_for_odd_equal_sizes(rng):
    lists = {e: frozenset(rng.sample(range(1, 10), 3)) for e in SQUARE.edges}
    assert compatible_pair(SQUARE, lists, (1, 2), (3, 4)) is not None


def test_trident():
    assert colour_trident({1, 2}, {1, 2}, {1, 2}) is None
    got = colour_trident({1, 2}, {1, 2}, {1, 3})
    assert got is not None and len(set(got)) == 3
    got = colour_trident({1, 2, 3}, {1, 2, 3}, {1, 2, 3})
    assert sorted(got) == [1, 2, 3]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.frozensets(st.integers(1, 5), min_size=2, max_size=3), min_size=3, max_size=3))
def test_trident_matches_brute_force(ls):
    got = colour_trident(*ls)
    exists = any(len({a, b, c}) == 3 for a, b, c in product(*ls))
    assert (got is not None) == exists
    if got is not None:
        assert all(c in l for c, l in zip(got, ls)) and len(set(got)) == 3


def test_trident_rejects_short_lists():
    with pytest.raises(ContractError):
        colour_trident({1}, {1, 2}, {1, 2})
