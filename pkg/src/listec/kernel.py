"""List edge-colouring of bipartite graphs through kernels.

A proper reference colouring orients every edge pair that meets at a vertex;
when each list is longer than the out-degree of its edge, repeatedly
colouring a kernel of the uncoloured edges succeeds.  The kernels come from
stable matchings.  On top of that sit the side-choosability routines: find a
colouring from the lists ``{1..deg(v)}`` (degree on side V), then use it as
the reference for the actual lists.
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Optional

from .errors import ContractError, GreedyFailure, InvariantViolation, NotChoosable
from .graph import Colouring, Edge, Graph, Lists, ekey, find_isomorphism, improper_pairs
from .greedy import colour_trident, semi_greedy
from .limits import check_guard

TWO_FACTOR_GUARD = 10
SEARCH_EDGE_GUARD = 40


class Bipartition:
    """Sides of a bipartite graph; list bounds are measured on ``side_v``."""

    __slots__ = ("side_v", "side_w")

    def __init__(self, side_v, side_w):
        self.side_v = frozenset(side_v)
        self.side_w = frozenset(side_w)

    @classmethod
    def of(cls, g: Graph, side_v):
        side_v = frozenset(side_v) & set(g.vertices)
        return cls(side_v, set(g.vertices) - side_v)

    def check(self, g: Graph):
        if self.side_v & self.side_w:
            raise ContractError("bipartition sides overlap")
        if set(g.vertices) != self.side_v | self.side_w:
            raise ContractError("bipartition does not cover the graph")
        for a, b in g.edges:
            if (a in self.side_v) == (b in self.side_v):
                raise ContractError(f"edge {a}-{b} does not cross the bipartition")

    def v_end(self, e: Edge):
        return e[0] if e[0] in self.side_v else e[1]

    def w_end(self, e: Edge):
        return e[1] if e[0] in self.side_v else e[0]

    def __repr__(self):
        return f"Bipartition(V={sorted(self.side_v)}, W={sorted(self.side_w)})"


# ---------------------------------------------------------------- Galvin core

def konig_colouring(g: Graph) -> Colouring:
    """Proper colouring of a bipartite graph with colours 1..max degree."""
    d = g.max_degree()
    at: Dict[int, Dict[int, int]] = {v: {} for v in g.vertices}
    col: Colouring = {}
    for x, y in g.edges:
        a = next(c for c in range(1, d + 1) if c not in at[x])
        if a in at[y]:
            b = next(c for c in range(1, d + 1) if c not in at[y])
            # flip the a/b path that starts at y; it cannot reach x
            path, cur, c = [], y, a
            while c in at[cur]:
                nxt = at[cur][c]
                path.append((cur, nxt, c))
                cur, c = nxt, (b if c == a else a)
            for p, q, c in path:
                del at[p][c]
                del at[q][c]
            for p, q, c in path:
                c2 = b if c == a else a
                at[p][c2] = q
                at[q][c2] = p
                col[ekey(p, q)] = c2
        at[x][a] = y
        at[y][a] = x
        col[(x, y)] = a
    return col


def slivnik_bounds(g: Graph, b: Bipartition, ref: Colouring) -> Dict[Edge, int]:
    """Minimum list size per edge for the kernel method under ``ref``.

    An edge needs one more colour than the number of edges it points to:
    larger reference colours at its V end, smaller ones at its W end.
    """
    out = {}
    for e in g.edges:
        v, w = b.v_end(e), b.w_end(e)
        c = ref[e]
        up = sum(1 for f in g.incident(v) if ref[f] > c)
        down = sum(1 for f in g.incident(w) if ref[f] < c)
        out[e] = up + down + 1
    return out


def stable_kernel(edges, ref: Colouring, b: Bipartition):
    """Stable matching on ``edges``: W-vertices propose in increasing
    reference colour; a V-vertex keeps the largest reference colour offered.
    Every unmatched edge points at a matched one, so the matching is a kernel.
    """
    prefs: Dict[int, list] = {}
    for e in edges:
        prefs.setdefault(b.w_end(e), []).append(e)
    for w in prefs:
        prefs[w].sort(key=lambda e: ref[e])
    nxt = {w: 0 for w in prefs}
    hold: Dict[int, Edge] = {}
    queue = deque(sorted(prefs))
    while queue:
        w = queue.popleft()
        if nxt[w] >= len(prefs[w]):
            continue
        e = prefs[w][nxt[w]]
        nxt[w] += 1
        v = b.v_end(e)
        cur = hold.get(v)
        if cur is None:
            hold[v] = e
        elif ref[e] > ref[cur]:
            hold[v] = e
            queue.append(b.w_end(cur))
        else:
            queue.append(w)
    return set(hold.values())


def galvin_colour(g: Graph, b: Bipartition, lists: Lists, ref: Colouring) -> Colouring:
    """Colour ``g`` from ``lists``, with the proper colouring ``ref`` as reference."""
    b.check(g)
    missing = [e for e in g.edges if e not in ref]
    if missing:
        raise ContractError(f"reference colouring misses edge {missing[0][0]}-{missing[0][1]}")
    clash = improper_pairs(g, ref)
    if clash:
        raise ContractError(f"reference colouring is improper at {clash[0][0]} and {clash[0][1]}")
    need = slivnik_bounds(g, b, ref)
    for e in g.edges:
        if len(lists[e]) < need[e]:
            raise ContractError(
                f"edge {e[0]}-{e[1]} has {len(lists[e])} colours but the reference needs {need[e]}")
    rem = {e: set(lists[e]) for e in g.edges}
    out: Colouring = {}
    for gamma in sorted(set().union(*rem.values()) if rem else ()):
        live = [e for e in g.edges if e not in out and gamma in rem[e]]
        if not live:
            continue
        for e in stable_kernel(live, ref, b):
            out[e] = gamma
            for f in g.adjacent_edges(e):
                rem[f].discard(gamma)
    left = [e for e in g.edges if e not in out]
    if left:
        raise InvariantViolation(f"kernel colouring left edge {left[0][0]}-{left[0][1]} uncoloured")
    return out


# ------------------------------------------------------ side-choosability

def canonical_lists(g: Graph, b: Bipartition) -> Lists:
    """The lists ``{1..deg(v)}`` on each edge ``wv``."""
    return {e: frozenset(range(1, g.degree(b.v_end(e)) + 1)) for e in g.edges}


def is_canonical(g: Graph, b: Bipartition, col: Colouring) -> bool:
    if len(col) != g.m() or improper_pairs(g, col):
        return False
    return all(1 <= col[e] <= g.degree(b.v_end(e)) for e in g.edges)


def find_2regular_spanning(g: Graph, b: Optional[Bipartition] = None):
    """Edges of a spanning subgraph in which every vertex has degree 2, or None."""
    if b is not None:
        check_guard("find_2regular_spanning side V", len(b.side_v), TWO_FACTOR_GUARD)
        check_guard("find_2regular_spanning side W", len(b.side_w), TWO_FACTOR_GUARD)
    if g.n() == 0 or any(g.degree(v) < 2 for v in g.vertices):
        return None
    edges = list(g.edges)
    deg = {v: 0 for v in g.vertices}
    left = {v: g.degree(v) for v in g.vertices}
    chosen = []

    def rec(i):
        if i == len(edges):
            return all(d == 2 for d in deg.values())
        a, c = edges[i]
        left[a] -= 1
        left[c] -= 1
        if deg[a] < 2 and deg[c] < 2:
            deg[a] += 1
            deg[c] += 1
            chosen.append(edges[i])
            if deg[a] + left[a] >= 2 and deg[c] + left[c] >= 2 and rec(i + 1):
                return True
            chosen.pop()
            deg[a] -= 1
            deg[c] -= 1
        if deg[a] + left[a] >= 2 and deg[c] + left[c] >= 2 and rec(i + 1):
            return True
        left[a] += 1
        left[c] += 1
        return False

    return frozenset(chosen) if rec(0) else None


def _two_factor_reference(g: Graph, b: Bipartition, h) -> Optional[Colouring]:
    """Colour the 2-factor ``h`` alternately 1/2, the other edges at each v with 3, 4, ..."""
    col: Colouring = {}
    hg = g.edge_subgraph(h)
    for start in hg.vertices:
        if any(e in col for e in hg.incident(start)):
            continue
        # walk the cycle through ``start``; bipartite cycles are even
        prev, cur, c = None, start, 1
        while True:
            nxt = min(x for x in hg.neighbours(cur) if x != prev) if prev is not None \
                else min(hg.neighbours(cur))
            e = ekey(cur, nxt)
            if e in col:
                break
            col[e] = c
            c = 3 - c
            prev, cur = cur, nxt
    for v in sorted(b.side_v):
        nxt = 3
        for e in g.incident(v):
            if e not in col:
                col[e] = nxt
                nxt += 1
    return col if is_canonical(g, b, col) else None


def _matching_reference(g: Graph, b: Bipartition) -> Optional[Colouring]:
    """Top colour on a matching between the full-degree V-vertices and the
    largest-degree W-vertices, then a 2-factor on what is left."""
    top = len(b.side_w)
    xs = sorted(v for v in b.side_v if g.degree(v) == top)
    if not xs or top < 2:
        return None
    ys = sorted(b.side_w, key=lambda w: (-g.degree(w), w))[:len(xs)]
    for perm in permutations(ys):
        m = [ekey(x, y) for x, y in zip(xs, perm)]
        rest = g.without_edges(m)
        if any(rest.degree(v) < 2 for v in rest.vertices) or any(rest.degree(w) > 3 for w in b.side_w):
            continue
        h = find_2regular_spanning(rest, b)
        if h is None:
            continue
        sub = _two_factor_reference(rest, b, h)
        if sub is None:
            continue
        sub.update({e: top for e in m})
        if is_canonical(g, b, sub):
            return sub
    return None


def _star_reference(g: Graph, b: Bipartition) -> Colouring:
    col = {}
    for v in b.side_v:
        for i, e in enumerate(g.incident(v), start=1):
            col[e] = i
    return col


FIG11_EDGES = [(1, 5), (1, 6), (2, 5), (2, 7), (3, 5), (3, 8), (4, 6), (4, 7), (4, 8)]
FIG11_V = frozenset({1, 2, 3, 4})
FIG11 = Graph(range(1, 9), FIG11_EDGES)


def fig11_mapping(g: Graph, b: Bipartition):
    """Isomorphism from the non-choosable 4+4 shape onto ``g`` (sides respected), or None."""
    if g.n() != 8 or g.m() != 9:
        return None
    iso = find_isomorphism(FIG11, g)
    if iso is None:
        return None
    # the shape has a degree-3 vertex on each side, so sides must be checked
    return iso if all(iso[v] in b.side_v for v in FIG11_V) else None


def canonical_colouring(g: Graph, b: Bipartition):
    """A colouring from ``{1..deg(v)}`` lists and the route that produced it.

    Routes in order: one proper colouring when every V-vertex has maximum
    degree, stars, 2-factor, top-colour matching plus 2-factor, semi-greedy,
    and finally exhaustive search.  Raises NotChoosable for the one known
    non-choosable shape, ContractError when no colouring exists.
    """
    b.check(g)
    if g.m() == 0:
        return "empty", {}
    d = g.max_degree()
    if all(g.degree(v) == d for v in b.side_v if g.degree(v) > 0):
        col = konig_colouring(g)
        if is_canonical(g, b, col):
            return "konig", col
    if all(g.degree(w) <= 1 for w in b.side_w):
        return "star", _star_reference(g, b)
    if all(g.degree(w) <= 3 for w in b.side_w):
        h = find_2regular_spanning(g, b)
        if h is not None:
            col = _two_factor_reference(g, b, h)
            if col is not None:
                return "two-factor", col
    col = _matching_reference(g, b)
    if col is not None:
        return "matching", col
    canon = canonical_lists(g, b)
    try:
        col = semi_greedy(g, canon)
        if is_canonical(g, b, col):
            return "greedy", col
    except GreedyFailure:
        pass
    iso = fig11_mapping(g, b)
    if iso is not None:
        raise NotChoosable(iso)
    from .oracle import exists_colouring
    check_guard("canonical colouring search", g.m(), SEARCH_EDGE_GUARD)
    res = exists_colouring(g, canon)
    if res.colourable:
        return "search", res.witness
    raise ContractError("graph is not side-choosable")


def check_v_dominated(g: Graph, b: Bipartition, lists: Lists):
    for e in g.edges:
        v = b.v_end(e)
        if len(lists[e]) < g.degree(v):
            raise ContractError(
                f"edge {e[0]}-{e[1]} has {len(lists[e])} colours, fewer than deg({v}) = {g.degree(v)}")


def v_choosable_colour(g: Graph, b: Bipartition, lists: Lists) -> Colouring:
    """Colour from lists with ``|L(wv)| >= deg(v)`` on side V."""
    b.check(g)
    check_v_dominated(g, b, lists)
    _, ref = canonical_colouring(g, b)
    return galvin_colour(g, b, lists, ref)


def colour_via_2regular(g: Graph, b: Bipartition, lists: Lists, h) -> Colouring:
    """Colour using the 2-factor ``h`` to build the reference colouring."""
    b.check(g)
    h = frozenset(ekey(*e) for e in h)
    hg = Graph(g.vertices, h)
    if not h <= set(g.edges) or any(hg.degree(v) != 2 for v in g.vertices):
        raise ContractError("edge set is not a spanning 2-regular subgraph")
    if any(g.degree(w) > 3 for w in b.side_w):
        raise ContractError("a W-vertex has degree above 3")
    check_v_dominated(g, b, lists)
    ref = _two_factor_reference(g, b, h)
    if ref is None:  # pragma: no cover - guaranteed by the degree bound
        raise InvariantViolation("2-factor reference is not canonical")
    return galvin_colour(g, b, lists, ref)


# ------------------------------------------------------------ subset choice

@dataclass
class SubsetChoice:
    """W-subset whose closed bipartite neighbourhood is side-choosable."""
    w_subset: FrozenSet[int]
    route: str
    graph: Optional[Graph] = None
    reference: Colouring = field(default_factory=dict)
    exception: Optional[dict] = None

    @property
    def is_exception(self):
        return self.exception is not None


def _closed_sub(g: Graph, ws):
    ws = set(ws)
    return Graph(sorted(ws | {x for w in ws for x in g.neighbours(w)}),
                 [e for e in g.edges if e[0] in ws or e[1] in ws])


def _choice(g: Graph, b: Bipartition, ws, route) -> SubsetChoice:
    sub = _closed_sub(g, ws)
    sb = Bipartition.of(sub, b.side_v)
    try:
        how, ref = canonical_colouring(sub, sb)
    except (ContractError, NotChoosable) as exc:
        raise InvariantViolation(f"subset route {route} produced a non-choosable subgraph") from exc
    return SubsetChoice(frozenset(ws), f"{route}/{how}", sub, ref)


def _nbhd(g: Graph, ws):
    return {x for w in ws for x in g.neighbours(w)}


def _small_tight(g: Graph, b: Bipartition, ws):
    """Handle a W-set of size at most 3 whose neighbourhood is no larger."""
    ws = sorted(ws)
    for w in ws:
        if g.degree(w) <= 1:
            return _choice(g, b, {w}, "low-w")
    if len(ws) == 2:
        return _choice(g, b, ws, "square")
    sub = _closed_sub(g, ws)
    return choose_subset_k33(sub, Bipartition.of(sub, b.side_v))


def _tight_subset(g: Graph, b: Bipartition, top: int):
    """First proper W-subset (by size, then lexicographic) with |N| <= size."""
    ws = sorted(b.side_w)
    for size in range(1, top):
        for sub in combinations(ws, size):
            if len(_nbhd(g, sub)) <= size:
                return sub
    return None


def choose_subset_k33(g: Graph, b: Bipartition) -> SubsetChoice:
    """Subset choice for |W| = 3 and |V| <= 3 (V meaning the W-neighbourhood)."""
    ws = sorted(b.side_w)
    vs = sorted(_nbhd(g, ws))
    if len(ws) != 3 or len(vs) > 3:
        raise ContractError("needs exactly three W-vertices with at most three neighbours")
    for w in ws:
        if g.degree(w) <= 1:
            return _choice(g, b, {w}, "low-w")
    for v in vs:
        if g.degree(v) == 1:
            (w,) = g.neighbours(v)
            return _choice(g, b, set(ws) - {w}, "pendant-v")
    if len(vs) < 3:
        return _choice(g, b, ws[:2], "two-w")
    tag = {6: "cycle", 7: "seven-edges", 8: "eight-edges", 9: "complete"}[g.m()]
    return _choice(g, b, ws, tag)


def choose_subset_k44(g: Graph, b: Bipartition) -> SubsetChoice:
    """Subset choice for |W| = 4, |V| <= 4, W-degrees at most 3.

    Returns a choice flagged as exception when ``g`` is the non-choosable shape.
    """
    ws = sorted(b.side_w)
    vs = sorted(_nbhd(g, ws))
    if len(ws) != 4 or len(vs) > 4 or any(g.degree(w) > 3 for w in ws):
        raise ContractError("needs four W-vertices of degree <= 3 with at most four neighbours")
    if len(vs) < 4:
        sub = _closed_sub(g, ws[:3])
        return choose_subset_k33(sub, Bipartition.of(sub, b.side_v))
    tight = _tight_subset(g, b, 4)
    if tight is not None:
        return _small_tight(g, b, tight)
    for w in ws:
        if g.degree(w) <= 1:  # pragma: no cover - excluded by the tight-set test
            return _choice(g, b, {w}, "low-w")
    for v in vs:
        if g.degree(v) == 1:  # pragma: no cover - likewise
            (w,) = g.neighbours(v)
            return _choice(g, b, set(ws) - {w}, "pendant-v")
    sub = _closed_sub(g, ws)
    iso = fig11_mapping(sub, Bipartition.of(sub, b.side_v))
    if iso is not None:
        return SubsetChoice(frozenset(), "exception", sub, {}, iso)
    return _choice(g, b, ws, "two-factor")


def choose_subset_k44_mindeg3(g: Graph, b: Bipartition, u) -> SubsetChoice:
    """Subset choice for |W| = 4, |V| <= 4, W-degrees at least 3, ``u`` adjacent to all of W."""
    ws = sorted(b.side_w)
    vs = sorted(_nbhd(g, ws))
    if len(ws) != 4 or len(vs) > 4 or any(g.degree(w) < 3 for w in ws):
        raise ContractError("needs four W-vertices of degree >= 3 with at most four neighbours")
    if u not in b.side_v or any(not g.has_edge(u, w) for w in ws):
        raise ContractError(f"vertex {u} is not adjacent to every W-vertex")
    if len(vs) < 4:
        sub = _closed_sub(g, ws[:3])
        return choose_subset_k33(sub, Bipartition.of(sub, b.side_v))
    tight = _tight_subset(g, b, 4)
    if tight is not None:
        return _small_tight(g, b, tight)
    return _choice(g, b, ws, "matching")


def colour_k44_mindeg3(g: Graph, b: Bipartition, u, lists: Lists) -> Colouring:
    """Colour the whole 4+4 graph when no proper W-subset is Hall-tight."""
    choice = choose_subset_k44_mindeg3(g, b, u)
    if choice.w_subset != b.side_w:
        raise ContractError("a proper subset is tight; colour that subset instead")
    check_v_dominated(g, b, lists)
    return galvin_colour(g, b, lists, choice.reference)


def colour_subset(choice: SubsetChoice, lists: Lists) -> Colouring:
    """Colour the chosen subgraph from V-dominated ``lists``."""
    if choice.is_exception:
        raise NotChoosable(choice.exception)
    g = choice.graph
    b = Bipartition.of(g, set(g.vertices) - set(choice.w_subset))
    check_v_dominated(g, b, lists)
    return galvin_colour(g, b, {e: lists[e] for e in g.edges}, choice.reference)


# ------------------------------------------------------------ fixed shapes

# the 3+4 bipartite piece of the second cherry configuration
FIG8_SIZES = {("u", "w1"): 4, ("u", "w2"): 4, ("u", "w3"): 3, ("v2", "w1"): 3, ("v2", "w2"): 2,
              ("v3", "w3"): 2, ("v1", "w1"): 2, ("v1", "w3"): 2, ("v3", "w2"): 2}
FIG8_REFERENCE = {("u", "w1"): 2, ("u", "w2"): 3, ("u", "w3"): 4, ("v2", "w1"): 3, ("v2", "w2"): 1,
                  ("v3", "w3"): 1, ("v1", "w1"): 1, ("v1", "w3"): 2, ("v3", "w2"): 2}
FIG8_V = ("u", "v1", "v2", "v3")


def _role_graph(pairs):
    names = sorted({x for p in pairs for x in p})
    idx = {n: i for i, n in enumerate(names)}
    return Graph(range(len(names)), [(idx[a], idx[b]) for a, b in pairs]), idx


def fig8_self_test():
    """The stored reference colouring is proper and meets every bound exactly."""
    g, idx = _role_graph(FIG8_SIZES)
    b = Bipartition.of(g, {idx[n] for n in FIG8_V})
    ref = {ekey(idx[a], idx[c]): col for (a, c), col in FIG8_REFERENCE.items()}
    if improper_pairs(g, ref):
        raise InvariantViolation("fig8 reference colouring is improper")
    need = slivnik_bounds(g, b, ref)
    for (a, c), size in FIG8_SIZES.items():
        if need[ekey(idx[a], idx[c])] > size:
            raise InvariantViolation(f"fig8 bound fails on {a}{c}")
    return True


fig8_self_test()


def check_shape(g: Graph, roles, pairs, what):
    """Edges of ``g`` must be exactly ``pairs`` mapped through ``roles``."""
    if len(set(roles.values())) != len(roles):
        raise ContractError(f"{what}: role map is not injective")
    want = {ekey(roles[a], roles[c]) for a, c in pairs}
    if set(g.edges) != want:
        extra = sorted(set(g.edges) - want)
        miss = sorted(want - set(g.edges))
        raise ContractError(f"{what}: graph does not match the shape (extra {extra}, missing {miss})")


def check_sizes(lists: Lists, roles, sizes, what):
    for (a, c), need in sizes.items():
        e = ekey(roles[a], roles[c])
        if len(lists[e]) < need:
            raise ContractError(f"{what}: edge {a}{c} has {len(lists[e])} colours, needs {need}")


def colour_cherry_bipartite(g: Graph, roles, lists: Lists) -> Colouring:
    """Colour the 3+4 cherry piece from lists at least its printed minimums."""
    check_shape(g, roles, FIG8_SIZES, "cherry-bipartite")
    check_sizes(lists, roles, FIG8_SIZES, "cherry-bipartite")
    b = Bipartition.of(g, {roles[n] for n in FIG8_V})
    ref = {ekey(roles[a], roles[c]): col for (a, c), col in FIG8_REFERENCE.items()}
    return galvin_colour(g, b, lists, ref)


FIG6_PAIRS = [("v1", "w1"), ("v2", "w1"), ("v3", "w1"), ("u", "w1"),
              ("v1", "w2"), ("v2", "w3"), ("v3", "w4"), ("u", "w2"), ("u", "w3"), ("u", "w4")]


def colour_fig6_transfer(g: Graph, roles, lists: Lists, aux) -> Colouring:
    """Colour the 4+4 transfer shape given a colouring of the two-copy stand-in.

    ``aux[(p, j)]`` is the colour of the stand-in edge between copy ``p``
    (1 or 2) and ``v_j`` (``j = 4`` meaning ``u``).  It must come from the
    list of ``v_j w1`` and be proper on the complete 2+4 graph.
    """
    check_shape(g, roles, FIG6_PAIRS, "fig6-transfer")
    r = roles
    vj = {1: r["v1"], 2: r["v2"], 3: r["v3"], 4: r["u"]}

    def E(a, c):
        return ekey(r[a], r[c])

    for j in range(1, 5):
        for p in (1, 2):
            if aux.get((p, j)) not in lists[ekey(vj[j], r["w1"])]:
                raise ContractError(f"stand-in colour for copy {p}, slot {j} is not on the w1 list")
        if aux[(1, j)] == aux[(2, j)]:
            raise ContractError(f"stand-in colouring clashes at slot {j}")
    for p in (1, 2):
        if len({aux[(p, j)] for j in range(1, 5)}) != 4:
            raise ContractError(f"stand-in colouring clashes at copy {p}")
    for i in (1, 2, 3):
        for e in (E(f"v{i}", "w1"), E(f"v{i}", f"w{i + 1}")):
            if len(lists[e]) < 2:
                raise ContractError(f"edge {e[0]}-{e[1]} needs two colours")
    for j in (1, 2, 3, 4):
        if len(lists[E("u", f"w{j}")]) < 4:
            raise ContractError(f"edge u-w{j} needs four colours")

    # cut lists to their minimum sizes, keeping the stand-in colours at w1
    lst = {}
    for i in (1, 2, 3):
        lst[E(f"v{i}", "w1")] = frozenset({aux[(1, i)], aux[(2, i)]})
        lst[E(f"v{i}", f"w{i + 1}")] = frozenset(sorted(lists[E(f"v{i}", f"w{i + 1}")])[:2])
        lst[E("u", f"w{i + 1}")] = frozenset(sorted(lists[E("u", f"w{i + 1}")])[:4])
    keep = {aux[(1, 4)], aux[(2, 4)]}
    lst[E("u", "w1")] = frozenset(keep | set(sorted(lists[E("u", "w1")] - keep)[:2]))

    # direct transfer: copy p's colours onto the edges at w1
    for p in (1, 2):
        for i in (1, 2, 3):
            if aux[(p, i)] not in lst[E(f"v{i}", f"w{i + 1}")]:
                col = {ekey(vj[j], r["w1"]): aux[(p, j)] for j in range(1, 5)}
                try:
                    return semi_greedy(g, lst, col)
                except GreedyFailure as exc:
                    raise InvariantViolation("fig6 direct transfer could not be finished") from exc

    # now both copies' colours fill the 2-lists at every v_i
    for i in (1, 2, 3):
        pair = {aux[(1, i)], aux[(2, i)]}
        if lst[E(f"v{i}", f"w{i + 1}")] != pair:
            raise InvariantViolation("fig6 list equalities do not hold")
    col = {E(f"v{i}", "w1"): aux[(1, i)] for i in (1, 2, 3)}
    col[E("u", "w1")] = aux[(1, 4)]
    for i in (1, 2, 3):
        col[E(f"v{i}", f"w{i + 1}")] = aux[(2, i)]
    spokes = [E("u", f"w{i + 1}") for i in (1, 2, 3)]
    free = [lst[s] - {aux[(1, 4)], aux[(2, i)]} for s, i in zip(spokes, (1, 2, 3))]
    if all(len(f) >= 2 for f in free):
        pick = colour_trident(*free)
        if pick is not None:
            col.update(dict(zip(spokes, pick)))
            return col
    # swap: copy 2 goes to w1 and the spokes, copy 1 to the v_i w_{i+1} edges
    col = {}
    for i in (1, 2, 3):
        col[E(f"v{i}", "w1")] = aux[(2, i)]
        col[E("u", f"w{i + 1}")] = aux[(2, i)]
        col[E(f"v{i}", f"w{i + 1}")] = aux[(1, i)]
    col[E("u", "w1")] = aux[(2, 4)]
    for i, s in zip((1, 2, 3), spokes):
        if aux[(2, i)] not in lst[s]:
            raise InvariantViolation("fig6 swap colours are not available on the spokes")
    return col
