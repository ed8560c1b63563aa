"""Exact search used to check every constructive routine independently."""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import Colouring, Graph, Issue, Lists, ekey
from .limits import check_guard

EDGE_GUARD = 40
CHOOSABLE_EDGE_GUARD = 9


@dataclass
class OracleResult:
    colourable: bool
    witness: Optional[Colouring] = None
    nodes: int = 0


def exists_colouring(g: Graph, lists: Lists) -> OracleResult:
    """Decide list edge-colourability by backtracking.

    Picks the uncoloured edge with the fewest live colours and prunes
    neighbour domains as it goes.
    """
    check_guard("exists_colouring", g.m(), EDGE_GUARD)
    edges = list(g.edges)
    dom = {e: set(lists[e]) for e in edges}
    nbrs = {e: g.adjacent_edges(e) for e in edges}
    col: Colouring = {}
    free = set(edges)
    res = OracleResult(False)

    def search():
        if not free:
            return True
        e = min(free, key=lambda x: (len(dom[x]), x))
        free.remove(e)
        for c in sorted(dom[e]):
            res.nodes += 1
            pruned = []
            ok = True
            for f in nbrs[e]:
                if f in free and c in dom[f]:
                    dom[f].remove(c)
                    pruned.append(f)
                    if not dom[f]:
                        ok = False
                        break
            if ok:
                col[e] = c
                if search():
                    return True
                del col[e]
            for f in pruned:
                dom[f].add(c)
        free.add(e)
        return False

    if all(dom[e] for e in edges) and search():
        res.colourable = True
        res.witness = dict(col)
    return res


def verify_colouring(g: Graph, lists: Lists, c: Colouring):
    """List every problem with ``c`` as a colouring of ``g`` from ``lists``.

    An empty result means ``c`` is proper, total and respects the lists.
    """
    issues = []
    for e in sorted(c):
        if not g.has_edge(*e):
            issues.append(Issue("unknown-edge", e))
    for e in g.edges:
        if e not in c:
            issues.append(Issue("uncoloured", e))
        elif c[e] not in lists.get(e, ()):
            issues.append(Issue("off-list", (e, c[e])))
    for v in g.vertices:
        seen = {}
        for e in g.incident(v):
            if e in c:
                if c[e] in seen:
                    issues.append(Issue("clash", (seen[c[e]], e, c[e])))
                else:
                    seen[c[e]] = e
    return issues


def chromatic_index(g: Graph) -> int:
    """Exact chromatic index: Delta or Delta + 1, decided by the search above."""
    d = g.max_degree()
    if d == 0:
        return 0
    uniform = {e: frozenset(range(1, d + 1)) for e in g.edges}
    return d if exists_colouring(g, uniform).colourable else d + 1


def _canonical_lists(k, universe, top):
    """Candidate k-lists for the next edge when colours 1..top are in use.

    New colours enter in increasing order, which removes most of the
    relabelling symmetry.  Output is sorted lexicographically.
    """
    out = []
    for t in range(k, -1, -1):
        fresh = k - t
        if top + fresh > universe or t > top:
            continue
        for old in combinations(range(1, top + 1), t):
            out.append(old + tuple(range(top + 1, top + fresh + 1)))
    out.sort()
    return out


def is_k_choosable(g: Graph, k: int, universe: int):
    """Check every assignment of k-subsets of {1..universe} up to relabelling.

    Returns ``(True, None)`` or ``(False, lists)`` with the first failing
    assignment in lexicographic order.  This is evidence at desk scale,
    not a proof of choosability, since the universe is bounded.
    """
    check_guard("is_k_choosable edges", g.m(), CHOOSABLE_EDGE_GUARD)
    check_guard("is_k_choosable universe", universe, 2 * k)
    edges = list(g.edges)
    if k <= 0:
        return (not edges), ({e: frozenset() for e in edges} if edges else None)
    if universe < k:
        raise ValueError("universe smaller than list size")
    if not edges:
        return True, None
    last = edges[-1]
    rest = Graph(g.vertices, edges[:-1])
    last_nbrs = g.adjacent_edges(last)
    current = {}

    def blocked_core():
        # colours that every colouring of the other edges puts next to ``last``
        core = None
        for col in _all_colourings(rest, {e: current[e] for e in edges[:-1]}):
            seen = frozenset(col[f] for f in last_nbrs)
            core = seen if core is None else core & seen
            if len(core) < k:
                return core
        return core

    def walk(i, top):
        if i == len(edges) - 1:
            core = blocked_core()
            for cand in _canonical_lists(k, universe, top):
                if core is None or set(cand) <= core:
                    current[last] = cand
                    return {e: frozenset(current[e]) for e in edges}
            return None
        e = edges[i]
        for cand in _canonical_lists(k, universe, top):
            current[e] = cand
            bad = walk(i + 1, max(top, max(cand)))
            if bad is not None:
                return bad
        del current[e]
        return None

    bad = walk(0, 0)
    return (bad is None), bad


def _all_colourings(g: Graph, lists):
    """Yield every proper colouring of ``g`` from ``lists``."""
    edges = list(g.edges)
    nbrs = {e: [f for f in g.adjacent_edges(e)] for e in edges}
    col = {}

    def rec(i):
        if i == len(edges):
            yield col
            return
        e = edges[i]
        for c in sorted(lists[e]):
            if all(col.get(f) != c for f in nbrs[e]):
                col[e] = c
                yield from rec(i + 1)
                del col[e]

    yield from rec(0)
