"""Colouring procedures for the fixed small shapes.

Every routine checks its shape and list minimums, trims lists to those
minimums, and then runs a fixed script of case checks.  Symmetric versions
of a case are tried in a fixed order.
"""
from typing import Dict, List, Sequence

from .catalogue import CATALOGUE, CHROMATIC_INDEX
from .errors import ContractError, GreedyFailure, InvariantViolation
from .graph import Colouring, Edge, Graph, Lists, ekey, find_isomorphism, remaining_lists
from .greedy import colour_trident, compatible_pair, semi_greedy
from .kernel import (Bipartition, check_shape, check_sizes, colour_cherry_bipartite,
                     galvin_colour, konig_colouring)

RoleMap = Dict[str, int]

__all__ = ["semi_greedy", "compatible_pair", "colour_trident", "colour_cycle", "CycleCertificate",
           "colour_balloon", "colour_eight", "colour_4pyramid", "colour_cherry_one",
           "colour_cherry_two", "colour_catalogue"]


def _trim(lists: Lists, sizes: Dict[Edge, int]) -> Lists:
    return {e: frozenset(sorted(lists[e])[:sizes[e]]) for e in sizes}


def _rem(g: Graph, lists: Lists, col: Colouring, e: Edge):
    return frozenset(lists[e]) - {col[f] for f in g.adjacent_edges(e) if f in col}


# ------------------------------------------------------------------ cycles

class CycleCertificate:
    """Proof that an odd cycle with one shared 2-list has no colouring."""

    def __init__(self, edges, colours):
        self.edges = tuple(edges)
        self.colours = frozenset(colours)

    def __repr__(self):
        return f"CycleCertificate(length={len(self.edges)}, colours={sorted(self.colours)})"


def cycle_order(g: Graph) -> List[Edge]:
    """Edges of the cycle ``g`` in cyclic order, starting at its smallest vertex."""
    if g.n() < 3 or g.m() != g.n() or any(g.degree(v) != 2 for v in g.vertices) \
            or len(g.components()) != 1:
        raise ContractError("graph is not a cycle")
    start = g.vertices[0]
    prev, cur, out = None, start, []
    while True:
        nxt = min(x for x in g.neighbours(cur) if x != prev)
        out.append(ekey(cur, nxt))
        prev, cur = cur, nxt
        if cur == start:
            return out


def colour_cycle(g: Graph, lists: Lists):
    """Colour a cycle from lists of size at least 2, or return a certificate."""
    order = cycle_order(g)
    if any(len(lists[e]) < 2 for e in order):
        raise ContractError("cycle lists need at least two colours")
    n = len(order)
    for i in range(n):
        extra = sorted(set(lists[order[i]]) - set(lists[order[(i + 1) % n]]))
        if extra:
            col = {order[i]: extra[0]}
            # walk backwards; the edge after i is last and keeps a spare colour
            for step in range(1, n):
                e = order[(i - step) % n]
                col[e] = min(_rem(g, lists, col, e))
            return col
    common = sorted(lists[order[0]])
    if len(common) == 2 and n % 2 == 1:
        return CycleCertificate(order, common)
    col: Colouring = {}
    for e in order:
        col[e] = min(_rem(g, lists, col, e))
    return col


def _path_cycle(edges: Sequence[Edge]):
    """Check that consecutive edges share a vertex and the sequence closes."""
    edges = [ekey(*e) for e in edges]
    n = len(edges)
    if n < 3:
        raise ContractError("a cycle needs at least three edges")
    verts = []
    for i in range(n):
        shared = set(edges[i]) & set(edges[(i + 1) % n])
        if len(shared) != 1:
            raise ContractError("edge sequence is not a cycle")
        verts.append(shared.pop())
    if len(set(verts)) != n:
        raise ContractError("edge sequence is not a simple cycle")
    return edges, verts


def colour_balloon(cycle: Sequence[Edge], pendant: Edge, lists: Lists) -> Colouring:
    """Cycle ``e1..en`` plus an edge hanging at the vertex shared by e1 and en.

    Needs lists of size 2 and a third colour on ``e1``.
    """
    edges, verts = _path_cycle(cycle)
    f = ekey(*pendant)
    hub = verts[-1]
    if hub not in f or (set(f) - {hub}) & set(verts):
        raise ContractError("pendant edge must hang at the vertex shared by e1 and en")
    g = Graph((), edges + [f])
    if any(len(lists[e]) < 2 for e in edges + [f]) or len(lists[edges[0]]) < 3:
        raise ContractError("balloon lists too short")
    sizes = {e: 2 for e in edges + [f]}
    sizes[edges[0]] = 3
    lst = _trim(lists, sizes)
    en = edges[-1]
    extra = sorted(lst[en] - lst[f])
    start = {en: extra[0]} if extra else None
    if start is None:
        spare = sorted(lst[edges[0]] - lst[f] - lst[en])
        start = {edges[0]: spare[0]}
    try:
        return semi_greedy(g, lst, start)
    except GreedyFailure as exc:
        raise InvariantViolation("balloon script failed") from exc


def colour_eight(cycle_v: Sequence[Edge], cycle_w: Sequence[Edge], v, lists: Lists) -> Colouring:
    """Two cycles meeting only at ``v``, both starting and ending there.

    Lists of size 2, and 4 on the last edge of each cycle.
    """
    gs, gv = _path_cycle(cycle_v)
    fs, fv = _path_cycle(cycle_w)
    if gv[-1] != v or fv[-1] != v or set(gv) & set(fv) != {v}:
        raise ContractError("cycles must share exactly the vertex v at their ends")
    g = Graph((), gs + fs)
    allx = gs + fs
    if any(len(lists[e]) < 2 for e in allx) or len(lists[gs[-1]]) < 4 or len(lists[fs[-1]]) < 4:
        raise ContractError("eight lists too short")
    sizes = {e: 2 for e in allx}
    sizes[gs[-1]] = sizes[fs[-1]] = 4
    lst = _trim(lists, sizes)

    for one, other in ((gs, fs), (fs, gs)):
        extra = sorted(lst[one[0]] - lst[other[0]])
        if extra:
            col = {one[0]: extra[0]}
            try:
                col = semi_greedy(g, lst, col, one[1:-1])
                rest = {e: _rem(g, lst, col, e) for e in [one[-1]] + list(other)}
                # the other cycle, read from its last edge, plus the dangling edge
                col.update(colour_balloon(list(reversed(other)), one[-1], rest))
                return col
            except (GreedyFailure, InvariantViolation, ContractError):
                continue
    for seq in (gs, fs):
        for i in range(len(seq) - 1):
            extra = sorted(lst[seq[i]] - lst[seq[i + 1]])
            if extra:
                try:
                    return semi_greedy(g, lst, {seq[i]: extra[0]})
                except GreedyFailure:
                    continue
    try:
        return semi_greedy(g, lst)
    except GreedyFailure as exc:
        raise InvariantViolation("eight script failed") from exc


# ------------------------------------------------------------------ pyramid

PYRAMID_SIZES = {("u", "v1"): 2, ("u", "v2"): 2, ("u", "w1"): 5, ("u", "w2"): 5,
                 ("v1", "w1"): 3, ("v1", "w2"): 3, ("v2", "w1"): 3, ("v2", "w2"): 3}

_PYRAMID_SYMMETRIES = [{}, {"v1": "v2", "v2": "v1"}, {"w1": "w2", "w2": "w1"},
                       {"v1": "v2", "v2": "v1", "w1": "w2", "w2": "w1"}]


def _relabel(roles: RoleMap, swap):
    return {k: roles[swap.get(k, k)] for k in roles}


def _edge_of(r):
    return lambda a, b: ekey(r[a], r[b])


def colour_4pyramid(g: Graph, roles: RoleMap, lists: Lists) -> Colouring:
    """Apex ``u`` over the square v1 w1 v2 w2, with the pyramid's list minimums."""
    check_shape(g, roles, PYRAMID_SIZES, "4-pyramid")
    check_sizes(lists, roles, PYRAMID_SIZES, "4-pyramid")
    E0 = _edge_of(roles)
    lst = _trim(lists, {E0(a, b): s for (a, b), s in PYRAMID_SIZES.items()})

    def finish(col):
        try:
            return semi_greedy(g, lst, col)
        except GreedyFailure:
            return None

    variants = [_relabel(roles, s) for s in _PYRAMID_SYMMETRIES]
    # 1: an apex edge and the opposite square edge share a colour
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("v1", "u")] & lst[E("v2", "w1")])
        if both and (out := finish({E("v1", "u"): both[0], E("v2", "w1"): both[0]})):
            return out
    # 2: the two opposite square edges share a colour; two triangles remain
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("v2", "w1")] & lst[E("v1", "w2")])
        if both:
            c = both[0]
            col = {E("v2", "w1"): c, E("v1", "w2"): c}
            rest = {e: _rem(g, lst, col, e) for e in g.edges if e not in col}
            try:
                col.update(colour_eight([E("u", "v1"), E("v1", "w1"), E("w1", "u")],
                                        [E("u", "v2"), E("v2", "w2"), E("w2", "u")],
                                        r["u"], rest))
                return col
            except (ContractError, InvariantViolation):
                pass
    # 3: a spoke to w shares a colour with the square edge at the other w
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("u", "w1")] & lst[E("v1", "w2")])
        if both and (out := finish({E("u", "w1"): both[0], E("v1", "w2"): both[0]})):
            return out
    # 4: the two square edges at one v share a colour
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("v1", "w2")] & lst[E("v1", "w1")])
        if both and (out := finish({E("v1", "w2"): both[0]})):
            return out
    # 5: the apex edge at v shares a colour with a square edge at v
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("v1", "u")] & lst[E("v1", "w2")])
        if both and (out := finish({E("v1", "u"): both[0]})):
            return out
    # 6: apex edges first, then the square from what is left
    E = E0
    spokes = [E("u", "v1"), E("u", "v2"), E("u", "w1"), E("u", "w2")]
    try:
        col = semi_greedy(g, lst, {}, spokes)
    except GreedyFailure as exc:
        raise InvariantViolation("4-pyramid apex edges could not be coloured") from exc
    square = [E("v1", "w1"), E("v1", "w2"), E("v2", "w1"), E("v2", "w2")]
    sq = Graph((), square)
    rest = {e: _rem(g, lst, col, e) for e in square}
    if any(len(rest[e]) < 2 for e in square):
        raise InvariantViolation("4-pyramid square kept fewer than two colours")
    b = Bipartition.of(sq, {roles["v1"], roles["v2"]})
    col.update(galvin_colour(sq, b, rest, konig_colouring(sq)))
    return col


# ------------------------------------------------------------------ cherries

CHERRY_ONE_SIZES = {("u", "w1"): 7, ("u", "w2"): 7, ("u", "w3"): 7, ("u", "v1"): 3, ("u", "v2"): 4,
                    ("u", "v3"): 2, ("v1", "w1"): 3, ("v1", "w3"): 3, ("v2", "w1"): 4,
                    ("v2", "w2"): 4, ("v2", "w3"): 4, ("v3", "w2"): 2}


def colour_cherry_one(g: Graph, roles: RoleMap, lists: Lists) -> Colouring:
    """Hub ``u`` with three leaves of degree 3, two of them sharing neighbours."""
    check_shape(g, roles, CHERRY_ONE_SIZES, "cherry-one")
    check_sizes(lists, roles, CHERRY_ONE_SIZES, "cherry-one")
    E = _edge_of(roles)
    lst = _trim(lists, {E(a, b): s for (a, b), s in CHERRY_ONE_SIZES.items()})
    pair = compatible_pair(g, lst, E("v3", "u"), E("v2", "w2"), among=[E("v2", "u"), E("v3", "w2")])
    if pair is None:
        raise InvariantViolation("cherry-one: no compatible pair")
    col = {E("v3", "u"): pair[0], E("v2", "w2"): pair[1]}
    try:
        col = semi_greedy(g, lst, col, [E("v3", "w2")])
    except GreedyFailure as exc:
        raise InvariantViolation("cherry-one: v3w2 has no colour") from exc
    spare = sorted(_rem(g, lst, col, E("u", "w2")) - lst[E("v1", "u")])
    col[E("u", "w2")] = spare[0]
    rest_edges = [e for e in g.edges if e not in col]
    sub = Graph((), rest_edges)
    rest = {e: _rem(g, lst, col, e) for e in rest_edges}
    proles = {"u": roles["u"], "v1": roles["v1"], "v2": roles["v2"], "w1": roles["w1"], "w2": roles["w3"]}
    col.update(colour_4pyramid(sub, proles, rest))
    return col


CHERRY_TWO_PAIRS = [("v1", "w1"), ("w1", "v2"), ("v2", "w2"), ("w2", "v3"), ("v3", "w3"), ("w3", "v1"),
                    ("u", "v1"), ("u", "v2"), ("u", "v3"), ("u", "w1"), ("u", "w2"), ("u", "w3")]
CHERRY_TWO_SIZES = {p: (7 if p[0] == "u" and p[1][0] == "w" else 3) for p in CHERRY_TWO_PAIRS}
_HEX = ["v1", "w1", "v2", "w2", "v3", "w3"]


def _hex_symmetries():
    """The six symmetries of the hexagon that keep v-vertices on v-vertices."""
    out = []
    for reflect in (False, True):
        for rot in (0, 2, 4):
            m = {}
            for i, name in enumerate(_HEX):
                j = (-i if reflect else i) + rot
                m[name] = _HEX[j % 6]
            out.append(m)
    return out


def colour_cherry_two(g: Graph, roles: RoleMap, lists: Lists) -> Colouring:
    """Hub ``u`` joined to every vertex of a hexagon of degree-3 vertices."""
    check_shape(g, roles, CHERRY_TWO_PAIRS, "cherry-two")
    check_sizes(lists, roles, CHERRY_TWO_SIZES, "cherry-two")
    E0 = _edge_of(roles)
    lst = _trim(lists, {E0(a, b): s for (a, b), s in CHERRY_TWO_SIZES.items()})
    variants = []
    for m in _hex_symmetries():
        r = {name: roles[m[name]] for name in _HEX}
        r["u"] = roles["u"]
        variants.append(r)
    spokes = lambda E: [E("u", "w1"), E("u", "w2"), E("u", "w3")]

    def rest_of(col):
        return {e: _rem(g, lst, col, e) for e in g.edges if e not in col}

    # i: a colour of v2u missing from v2w1 leaves the bipartite piece
    for r in variants:
        E = _edge_of(r)
        extra = sorted(lst[E("v2", "u")] - lst[E("v2", "w1")])
        if not extra:
            continue
        try:
            col = semi_greedy(g, lst, {E("v2", "u"): extra[0]}, [E("v1", "u"), E("v3", "u")])
            bip = [e for e in g.edges if e not in col]
            col.update(colour_cherry_bipartite(Graph((), bip), r, rest_of(col)))
            return col
        except (GreedyFailure, ContractError, InvariantViolation):
            continue
    # ii: a colour of v2u missing from some spoke; balloon on the far side
    for r in variants:
        E = _edge_of(r)
        for j in (1, 2, 3):
            extra = sorted(lst[E("v2", "u")] - lst[E("u", f"w{j}")])
            if not extra:
                continue
            c = extra[0]
            try:
                col = {E("v2", "u"): c}
                if c in lst[E("v3", "u")]:
                    if c not in lst[E("v3", "w2")]:
                        raise InvariantViolation("cherry-two: list equality at v3 fails")
                    col[E("v3", "w2")] = c
                else:
                    col = semi_greedy(g, lst, col, [E("v3", "w2")])
                col = semi_greedy(g, lst, col, [E("v2", "w2")])
                col = semi_greedy(g, lst, col, [E("v2", "w1")])
                rest = rest_of(col)
                col.update(colour_balloon([E("v1", "w3"), E("w3", "v3"), E("v3", "u"), E("u", "v1")],
                                          E("v1", "w1"), rest))
                return semi_greedy(g, lst, col, spokes(E))
            except (GreedyFailure, ContractError, InvariantViolation):
                continue
    # iii: v2u and v1u share a colour, which also sits on v2w1
    for r in variants:
        E = _edge_of(r)
        both = sorted(lst[E("v2", "u")] & lst[E("v1", "u")])
        if not both:
            continue
        c = both[0]
        if c not in lst[E("v2", "w1")]:
            continue
        try:
            col = {E("v1", "u"): c, E("v2", "w1"): c}
            col = semi_greedy(g, lst, col, [E("v1", "w1")])
            col = semi_greedy(g, lst, col, [E("v1", "w3")])
            rest = rest_of(col)
            col.update(colour_balloon([E("v3", "w2"), E("w2", "v2"), E("v2", "u"), E("u", "v3")],
                                      E("v3", "w3"), rest))
            return semi_greedy(g, lst, col, spokes(E))
        except (GreedyFailure, ContractError, InvariantViolation):
            continue
    raise InvariantViolation("cherry-two: no branch applied")


# ------------------------------------------------------------------ catalogue

def colour_catalogue(g: Graph, cid: str, lists: Lists) -> Colouring:
    """Colour a graph isomorphic to catalogue entry ``cid`` from lists of size chi'."""
    if cid not in CATALOGUE:
        raise ContractError(f"unknown catalogue id {cid!r}")
    ref = CATALOGUE[cid]
    iso = find_isomorphism(ref, g)
    if iso is None:
        raise ContractError(f"graph is not isomorphic to catalogue entry {cid}")
    need = CHROMATIC_INDEX[cid]
    for e in g.edges:
        if len(lists[e]) < need:
            raise ContractError(f"edge {e[0]}-{e[1]} has {len(lists[e])} colours, needs {need}")

    def E(a, b):
        return ekey(iso[a], iso[b])

    lst = _trim(lists, {e: need for e in g.edges})
    col: Colouring = {}
    try:
        if cid == "a":
            return _catalogue_k4(g, lst, E, col)
        if cid == "b":
            col = _pair_step(g, lst, col, E(1, 2), E(3, 5))
            col = _pair_step(g, lst, col, E(1, 3), E(2, 4))
            return semi_greedy(g, lst, col)
        if cid == "c":
            col = semi_greedy(g, lst, col, [E(1, 2), E(1, 3), E(2, 3)])
            return _bipartite_rest(g, lst, col, {iso[1], iso[2], iso[3]})
        if cid == "d":
            col = _pair_step(g, lst, col, E(1, 3), E(2, 4))
            col = _pair_step(g, lst, col, E(1, 2), E(3, 5))
            col = _pair_step(g, lst, col, E(1, 4), E(3, 6))
            return semi_greedy(g, lst, col)
        col = _catalogue_k4(g, lst, E, col)
        late = [E(6, 8)] if cid == "h" else []
        col = _bipartite_rest(g, lst, col, {iso[v] for v in range(1, 5)}, skip=late)
        return semi_greedy(g, lst, col)
    except GreedyFailure as exc:
        raise InvariantViolation(f"catalogue script {cid} failed") from exc


def _pair_step(g, lst, col, e, f):
    uncol = [x for x in g.edges if x not in col]
    sub = Graph((), uncol)
    rem = {x: _rem(g, lst, col, x) for x in uncol}
    pair = compatible_pair(sub, rem, e, f)
    if pair is None:
        raise InvariantViolation("catalogue: no compatible pair")
    col = dict(col)
    col[e], col[f] = pair
    return col


def _catalogue_k4(g, lst, E, col):
    col = _pair_step(g, lst, col, E(1, 2), E(3, 4))
    square = [E(1, 3), E(2, 3), E(2, 4), E(1, 4)]
    sq = Graph((), square)
    rest = {x: _rem(g, lst, col, x) for x in square}
    one = E(1, 3)[0] if E(1, 3)[0] in E(1, 4) else E(1, 3)[1]
    two = E(2, 3)[0] if E(2, 3)[0] in E(2, 4) else E(2, 3)[1]
    b = Bipartition.of(sq, {one, two})
    col.update(galvin_colour(sq, b, rest, konig_colouring(sq)))
    return col


def _bipartite_rest(g, lst, col, core, skip=()):
    """Kernel colouring of the uncoloured edges between ``core`` and the rest."""
    edges = [e for e in g.edges if e not in col and e not in skip]
    if not edges:
        return col
    bg = Graph((), edges)
    for a, b in edges:
        if (a in core) == (b in core):
            raise InvariantViolation("catalogue rest is not bipartite across the core")
    b = Bipartition.of(bg, core)
    rest = {e: _rem(g, lst, col, e) for e in edges}
    col = dict(col)
    col.update(galvin_colour(bg, b, rest, konig_colouring(bg)))
    return col
