"""Finding and classifying the removable hub structures, and 3-tree recognition."""
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional

from .catalogue import CATALOGUE
from .decomp import (TreeDecomposition, normalized, path_order, require_valid, restrict,
                     root_and_measure, validate)
from .errors import ContractError, InvariantViolation
from .graph import Graph, Issue, find_isomorphism

BIG_W = "BIG_W"
FIG4A, FIG4B, FIG4C = "FIG4A", "FIG4B", "FIG4C"
FIG5 = "FIG5"
PW4_MINDEG3, PW4_MAXDEG3, PW4_TWINS, FIG6 = "PW4_MINDEG3", "PW4_MAXDEG3", "PW4_TWINS", "FIG6"


@dataclass
class Substructure:
    """Hub ``u`` in ``v_set``; ``w_set`` hangs off it.  ``witness`` decomposes G - W."""

    v_set: FrozenSet[int]
    w_set: FrozenSet[int]
    u: int
    witness: TreeDecomposition
    node: int
    case_tag: Optional[str] = None


@dataclass
class Classification:
    tag: str
    w_prime: FrozenSet[int]
    roles: Optional[Dict[str, int]] = None


def check_degree_sum(g: Graph, l: int):
    """First edge (key order) with deg(v)+deg(w) < max(l, deg v, deg w) + 2, else None."""
    for a, b in g.edges:
        da, db = g.degree(a), g.degree(b)
        if da + db < max(l, da, db) + 2:
            return (a, b)
    return None


def degree_sum_violations(g: Graph, l: int):
    """Every edge breaking the degree-sum inequality, in key order.

    Deleting other edges never repairs a violation, so the whole batch can
    be removed at once and put back one edge at a time in reverse.
    """
    out = []
    for a, b in g.edges:
        da, db = g.degree(a), g.degree(b)
        if da + db < max(l, da, db) + 2:
            out.append((a, b))
    return out


# ------------------------------------------------------------------ validation

def validate_substructure(g: Graph, s: Substructure, k: int, l: int) -> List[Issue]:
    """One issue per failed condition (a)..(h), plus structural problems."""
    out = []
    V, W, u = set(s.v_set), set(s.w_set), s.u
    if not V or not W:
        out.append(Issue("structure", "V and W must be non-empty"))
    if V & W:
        out.append(Issue("structure", sorted(V & W)))
    if u not in V:
        out.append(Issue("structure", f"hub {u} not in V"))
    unknown = (V | W) - set(g.vertices)
    if unknown:
        out.append(Issue("structure", f"unknown vertices {sorted(unknown)}"))
    if out:
        return out
    for w in sorted(W):
        inside = g.neighbours(w) & W
        if inside:
            out.append(Issue("a", (w, min(inside))))
        outside = g.neighbours(w) - V - W
        if outside:
            out.append(Issue("a", (w, min(outside))))
        if u not in g.neighbours(w):
            out.append(Issue("b", w))
        if g.degree(w) > k:
            out.append(Issue("c", w))
    if len(V) > k + 1:
        out.append(Issue("d", len(V)))
    stray = g.neighbours(u) - V - W
    if stray:
        out.append(Issue("e", min(stray)))
    if g.degree(u) < l + 2 - k:
        out.append(Issue("f", g.degree(u)))
    if len(W) < l + 2 - 2 * k:
        out.append(Issue("g", len(W)))
    rest = g.subgraph(set(g.vertices) - W)
    d = s.witness
    problems = validate(rest, d)
    if problems:
        out.append(Issue("h", problems[0]))
    elif d.width > k:
        out.append(Issue("h", f"width {d.width}"))
    elif s.node not in d.bags or not V <= set(d.bags[s.node]):
        out.append(Issue("h", f"V not inside bag of node {s.node}"))
    return out


def path_extras(s: Substructure, k: int) -> List[Issue]:
    """Extra promises for path decompositions: |V| <= k and the bag node is an end."""
    out = []
    if s.witness.shape != "path":
        out.append(Issue("path-shape", s.witness.shape))
        return out
    if len(s.v_set) > k:
        out.append(Issue("path-size", len(s.v_set)))
    adj = s.witness.tree_adj()
    if len(adj.get(s.node, ())) > 1:
        out.append(Issue("leaf", s.node))
    return out


# ------------------------------------------------------------------ finder

def _candidate(g: Graph, d: TreeDecomposition, k: int, r: int) -> Substructure:
    rh = root_and_measure(d, r)
    big = [v for v in g.vertices if g.degree(v) >= k + 1]
    u = max(big, key=lambda v: (rh.heights[rh.top[v]], -v))
    tu = rh.top[u]
    below = rh.subtree(tu)
    bag = d.bag(tu)
    W = frozenset(g.neighbours(u) - bag)
    if not W:
        raise InvariantViolation(f"hub {u} has every neighbour in its top bag")
    V = frozenset({u} | (g.neighbours(u) & bag) | set().union(*(g.neighbours(w) for w in W)))
    keep = set(g.vertices) - W
    if d.shape != "path":
        return Substructure(V, W, u, restrict(d, keep), tu)
    order = path_order(d)
    if order[0] != r:
        order.reverse()
    i = order.index(tu)
    if i + 1 >= len(order):
        return Substructure(V, W, u, restrict(d, keep), tu)
    sep = bag & d.bag(order[i + 1])
    X = set().union(*(d.bags[t] for t in below))
    lower = sorted(X - bag - W)
    if any(not g.neighbours(x) <= sep for x in lower):
        return Substructure(V, W, u, restrict(d, keep), tu)
    # path r .. t_u, then one bag per leftover low vertex, then the separator alone;
    # V rides along in the tail when that still fits the width
    tail = sep | V if len(sep | V) <= k else sep
    bags = [[v for v in d.bags[t] if v in keep] for t in order[:i + 1]]
    if lower:
        bags += [sorted(tail | {x}) for x in lower]
        bags.append(sorted(tail))
    ids = list(range(len(bags)))
    wit = TreeDecomposition(dict(zip(ids, bags)), tuple(zip(ids, ids[1:])), "path")
    node = ids[-1] if V <= set(bags[-1]) else i
    return Substructure(V, W, u, wit, node)


def find_substructure(g: Graph, d: TreeDecomposition, k: int, l: int, check: bool = True) -> Substructure:
    """Locate a removable hub structure, following the deepest high-degree vertex.

    ``check=False`` skips validating ``d`` (callers that maintain it themselves).
    """
    if l < 2 * k - 1:
        raise ContractError(f"need l >= 2k-1, got k={k}, l={l}")
    bad = check_degree_sum(g, l)
    if bad is not None:
        raise ContractError(f"edge {bad[0]}-{bad[1]} violates the degree-sum condition")
    if g.m() == 0:
        raise ContractError("graph has no edges")
    if check:
        require_valid(g, d)
    if d.width > k:
        raise ContractError(f"decomposition has width {d.width} > {k}")
    d = normalized(d)
    if d.shape == "path":
        order = path_order(d)
        roots = [order[0]] if len(order) == 1 else [order[0], order[-1]]
    else:
        roots = [min(d.bags)]
    best = None
    for r in roots:
        s = _candidate(g, d, k, r)
        if d.shape != "path":
            return s
        miss = len(path_extras(s, k))
        if not miss:
            return s
        if best is None or miss < best[0]:
            best = (miss, s)
    return best[1]


# ------------------------------------------------------------------ classifiers

def _need(cond, what):
    if not cond:
        raise InvariantViolation(what)


def _least_roles(names_by_vertex_sets, check):
    """Lexicographically least role bijection passing ``check``."""
    best = None
    for cand in names_by_vertex_sets:
        if check(cand):
            key = tuple(cand[n] for n in sorted(cand))
            if best is None or key < best[0]:
                best = (key, cand)
    return None if best is None else best[1]


def classify_tw3(g: Graph, s: Substructure) -> Classification:
    W, u = sorted(s.w_set), s.u
    if len(W) >= 4:
        return Classification(BIG_W, frozenset(W[:4]))
    _need(len(W) == 3, f"(3,7) structure with |W|={len(W)}")
    _need(g.degree(u) == 6, f"hub degree {g.degree(u)}, expected 6")
    _need(all(g.degree(w) == 3 for w in W), "W vertices must have degree 3")
    nb = {w: frozenset(g.neighbours(w) - {u}) for w in W}
    kinds = len(set(nb.values()))
    if kinds == 1:
        v1, v2 = sorted(nb[W[0]])
        return Classification(FIG4A, frozenset(W), {"u": u, "v1": v1, "v2": v2,
                                                   "w1": W[0], "w2": W[1], "w3": W[2]})
    vs = sorted(set().union(*nb.values()))
    _need(len(vs) == 3, "W neighbourhoods must lie in three vertices")
    _need(g.neighbours(u) >= set(vs), "hub must see the three v-vertices")
    if kinds == 2:
        want = {"w1": ("v1", "v2"), "w3": ("v1", "v2"), "w2": ("v2", "v3")}
    else:
        want = {"w1": ("v1", "v2"), "w2": ("v2", "v3"), "w3": ("v1", "v3")}

    def cands():
        for pv in permutations(vs):
            for pw in permutations(W):
                yield {"u": u, "v1": pv[0], "v2": pv[1], "v3": pv[2],
                       "w1": pw[0], "w2": pw[1], "w3": pw[2]}

    def ok(r):
        return all(nb[r[w]] == {r[a], r[b]} for w, (a, b) in want.items())

    roles = _least_roles(cands(), ok)
    _need(roles is not None, "no role map for the three-w case")
    return Classification(FIG4B if kinds == 2 else FIG4C, frozenset(W), roles)


def classify_pw3(g: Graph, s: Substructure) -> Classification:
    W, u = sorted(s.w_set), s.u
    if len(W) >= 3:
        return Classification(BIG_W, frozenset(W[:3]))
    _need(len(W) == 2, f"(3,6) structure with |W|={len(W)}")
    _need(g.degree(u) == 5, f"hub degree {g.degree(u)}, expected 5")
    _need(all(g.degree(w) == 3 for w in W), "W vertices must have degree 3")
    n1, n2 = (frozenset(g.neighbours(w) - {u}) for w in W)
    _need(n1 == n2, "the two W vertices must share their neighbourhood")
    v1, v2 = sorted(n1)
    _need({v1, v2} <= g.neighbours(u), "hub must see both v-vertices")
    rest = sorted(g.neighbours(u) - set(W) - {v1, v2})
    _need(len(rest) == 1, "hub must have exactly one further neighbour")
    return Classification(FIG5, frozenset(W), {"u": u, "v1": v1, "v2": v2, "w1": W[0], "w2": W[1],
                                               "v'": rest[0]})


def classify_pw4(g: Graph, s: Substructure) -> Classification:
    W, u = sorted(s.w_set), s.u
    _need(len(W) >= 4, f"(4,10) structure with |W|={len(W)}")
    high = [w for w in W if g.degree(w) >= 3]
    if len(high) >= 4:
        return Classification(PW4_MINDEG3, frozenset(high[:4]))
    low = [w for w in W if g.degree(w) <= 3]
    if len(low) >= 4:
        return Classification(PW4_MAXDEG3, frozenset(low[:4]))
    two = [w for w in W if g.degree(w) == 2]
    seen = {}
    for w in two:
        key = frozenset(g.neighbours(w))
        if key in seen:
            return Classification(PW4_TWINS, frozenset({seen[key], w}))
        seen[key] = w
    fours = [w for w in W if g.degree(w) == 4]
    _need(fours and len(two) >= 3, "no case of the (4,10) analysis applies")
    w1 = fours[0]
    ws = two[:3]
    roles = {"u": u, "w1": w1}
    for i, w in enumerate(ws, start=1):
        other = sorted(g.neighbours(w) - {u})
        _need(len(other) == 1 and other[0] in g.neighbours(w1), "degree-2 vertex outside the hub pattern")
        roles[f"w{i + 1}"] = w
        roles[f"v{i}"] = other[0]
    _need(g.neighbours(w1) == {u, roles["v1"], roles["v2"], roles["v3"]}, "degree-4 vertex pattern")
    return Classification(FIG6, frozenset([w1] + ws), roles)


# ------------------------------------------------------------------ 3-trees

def three_tree_order(g: Graph):
    """Peel simplicial degree-3 vertices down to a 4-clique.

    Returns ``(order, later_neighbours)`` for a 3-tree, else None.
    """
    if g.n() < 4 or g.m() != 3 * g.n() - 6:
        return None
    adj = {v: set(g.neighbours(v)) for v in g.vertices}
    order, higher = [], {}
    while len(adj) > 4:
        pick = None
        for v in sorted(adj):
            if len(adj[v]) == 3:
                a, b, c = sorted(adj[v])
                if b in adj[a] and c in adj[a] and c in adj[b]:
                    pick = v
                    break
        if pick is None:
            return None
        higher[pick] = frozenset(adj[pick])
        for x in adj.pop(pick):
            adj[x].discard(pick)
        order.append(pick)
    rest = sorted(adj)
    if any(len(adj[v]) != 3 for v in rest):
        return None
    for i, v in enumerate(rest):
        higher[v] = frozenset(rest[i + 1:])
        order.append(v)
    return order, higher


def is_three_tree(g: Graph) -> bool:
    return three_tree_order(g) is not None


def match_small_3tree(g: Graph) -> Optional[str]:
    """Catalogue id of a 3-tree with max degree <= 6, or None if it is not in the list."""
    if not is_three_tree(g):
        raise ContractError("graph is not a 3-tree")
    if g.max_degree() > 6:
        raise ContractError(f"max degree {g.max_degree()} > 6")
    for cid, ref in CATALOGUE.items():
        if ref.n() == g.n() and ref.m() == g.m() and find_isomorphism(ref, g) is not None:
            return cid
    return None
