"""Constructive list edge-colouring by peeling off removable structures.

Each step removes an edge or a few vertices, colours the smaller graph
first, and then extends the colouring with one of the fixed routines.  The
recursion runs on an explicit stack.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import gadgets, kernel
from .catalogue import CHROMATIC_INDEX
from .decomp import (TreeDecomposition, decompose_pw, decompose_tw3, from_path, normalized,
                     path_order, restrict, three_tree_decomposition, validate)
from .errors import ContractError, GreedyFailure, InputError, InvariantViolation
from .graph import Colouring, Graph, Lists, check_lists, ekey, improper_pairs, remaining_lists
from .oracle import verify_colouring
from .substructure import (BIG_W, FIG4A, FIG4B, FIG4C, FIG5, FIG6, PW4_MAXDEG3, PW4_MINDEG3,
                           PW4_TWINS, check_degree_sum, classify_pw3, degree_sum_violations, classify_pw4, classify_tw3,
                           find_substructure, is_three_tree, match_small_3tree, three_tree_order)

TW3_L7, PW3_L6, PW4_L10, THREE_TREE = "TW3_L7", "PW3_L6", "PW4_L10", "THREE_TREE"
REGIMES = {TW3_L7: (3, 7, "tree"), PW3_L6: (3, 6, "path"), PW4_L10: (4, 10, "path")}

EDGE_REDUCTION, SUBSTRUCTURE, AUX_GRAPH, CATALOGUE, GADGET = (
    "EDGE_REDUCTION", "SUBSTRUCTURE", "AUX_GRAPH", "CATALOGUE", "GADGET")


@dataclass
class TraceStep:
    kind: str
    removed: tuple
    depth: int
    detail: str = ""


@dataclass
class SolveTrace:
    regime: str = ""
    route: str = ""
    steps: List[TraceStep] = field(default_factory=list)

    def add(self, kind, removed, depth, detail=""):
        self.steps.append(TraceStep(kind, tuple(removed), depth, detail))

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for s in self.steps:
            key = s.kind if s.kind != SUBSTRUCTURE else f"{s.kind}:{s.detail.split()[0]}"
            out[key] = out.get(key, 0) + 1
        return out


@dataclass
class SolveRequest:
    graph: Graph
    lists: Lists
    regime: str
    decomposition: Optional[TreeDecomposition] = None
    seed: int = 0


def size(g: Graph) -> int:
    return g.n() + g.m()


def list_bound_issue(g: Graph, lists: Lists, l: int):
    """First edge whose list is shorter than max(l, deg v, deg w)."""
    for a, b in g.edges:
        need = max(l, g.degree(a), g.degree(b))
        if len(lists[(a, b)]) < need:
            return (a, b), need
    return None


def closed_part(g: Graph, ws) -> Graph:
    """The edges with an end in ``ws``, on ``ws`` plus its neighbours."""
    ws = set(ws)
    return g.edge_subgraph([e for e in g.edges if e[0] in ws or e[1] in ws])


def build_aux_graph(g1: Graph, v_set, roles, lists: Lists):
    """Add two vertices joined to every vertex of ``v_set``; lists copied from the w1 edges."""
    base = max(g1.vertices, default=-1) + 1
    p = (base, base + 1)
    order = [roles["v1"], roles["v2"], roles["v3"], roles["u"]]
    if set(order) != set(v_set):
        raise InvariantViolation("auxiliary graph: V must be v1, v2, v3 and u")
    edges = list(g1.edges) + [ekey(q, x) for q in p for x in order]
    g_star = Graph(list(g1.vertices) + list(p), edges)
    l_star = {e: lists[e] for e in g1.edges}
    for q in p:
        for x in order:
            l_star[ekey(q, x)] = lists[ekey(x, roles["w1"])]
    return g_star, l_star, p


def _splice(d: TreeDecomposition, core, extra_bags) -> TreeDecomposition:
    """Insert a chain of ``extra_bags`` (each containing ``core``) at a bag holding ``core``.

    For a path the chain goes at an end, or between two nodes whose shared
    vertices all lie in ``core``.
    """
    core = set(core)
    nxt = max(d.bags, default=-1) + 1
    ids = list(range(nxt, nxt + len(extra_bags)))
    bags = dict(d.bags)
    bags.update(zip(ids, extra_bags))
    inner = list(zip(ids, ids[1:]))
    hosts = sorted((t for t in d.nodes if core <= set(d.bags[t])), key=lambda t: (len(d.bags[t]), t))
    if d.shape == "tree":
        if not hosts:
            raise InvariantViolation("no bag contains the auxiliary attachment set")
        return TreeDecomposition(bags, d.tree_edges + ((hosts[0], ids[0]),) + tuple(inner), "tree")
    adj = d.tree_adj()
    for h in hosts:
        if len(adj[h]) <= 1:
            return TreeDecomposition(bags, d.tree_edges + ((h, ids[0]),) + tuple(inner), "path")
        for s in adj[h]:
            if set(d.bags[h]) & set(d.bags[s]) <= core:
                edges = [e for e in d.tree_edges if set(e) != {h, s}]
                edges += [(h, ids[0]), (ids[-1], s)] + inner
                return TreeDecomposition(bags, tuple(edges), "path")
    raise InvariantViolation("no place to insert the auxiliary bags")


# ------------------------------------------------------------------ the machine

@dataclass
class _Task:
    g: Graph
    lists: Lists
    d: TreeDecomposition
    depth: int
    k: int
    l: int


def _remaining(g: Graph, lists: Lists, col: Colouring, part: Graph) -> Lists:
    sub = {e: col[e] for e in g.edges if e in col}
    return remaining_lists(g, lists, sub, part.edges)


def _assert_dominated(part: Graph, side_v, rem: Lists, what):
    """The remaining-list bound from the removal step: at least the degree inside the piece."""
    for a, b in part.edges:
        v = a if a in side_v else b
        if len(rem[(a, b)]) < part.degree(v):
            raise InvariantViolation(f"{what}: edge {a}-{b} kept {len(rem[(a, b)])} colours, "
                                     f"needs {part.degree(v)}")


class _Machine:
    def __init__(self, trace: SolveTrace):
        self.trace = trace

    def run(self, root: _Task) -> Colouring:
        work: List[tuple] = [("solve", root)]
        results: List[Colouring] = []
        while work:
            kind, item = work.pop()
            if kind == "solve":
                self._expand(item, work, results)
            else:
                need, finish = item
                got = [results.pop() for _ in range(need)][::-1]
                results.append(finish(*got))
        assert len(results) == 1
        return results[0]

    def _child(self, t: _Task, g: Graph, lists=None, d=None) -> _Task:
        if size(g) >= size(t.g):
            raise InvariantViolation("reduction step did not shrink the graph")
        lists = t.lists if lists is None else lists
        d = restrict(t.d, g.vertices) if d is None else d
        return _Task(g, {e: lists[e] for e in g.edges}, d, t.depth + 1, t.k, t.l)

    def _expand(self, t: _Task, work, results):
        g = t.g
        if g.m() == 0:
            results.append({})
            return
        iso = [v for v in g.vertices if g.degree(v) == 0]
        if iso:
            g = g.subgraph(set(g.vertices) - set(iso))
            t = _Task(g, t.lists, restrict(t.d, g.vertices), t.depth, t.k, t.l)
        comps = g.components()
        if len(comps) > 1:
            parts = [self._child(t, g.subgraph(c)) for c in comps]

            def merge(*cols):
                out = {}
                for c in cols:
                    out.update(c)
                return out
            work.append(("extend", (len(parts), merge)))
            for p in reversed(parts):
                work.append(("solve", p))
            return
        batch = degree_sum_violations(g, t.l)
        if batch:
            for i, e in enumerate(batch):
                self.trace.add(EDGE_REDUCTION, [e], t.depth + i)
            child = self._child(t, g.without_edges(batch))
            child.depth = t.depth + len(batch)

            def finish_edges(col, g=g, batch=batch, lists=t.lists):
                col = dict(col)
                for e in reversed(batch):
                    taken = {col[f] for f in g.adjacent_edges(e) if f in col}
                    free = lists[e] - taken
                    if not free:
                        raise InvariantViolation(f"edge {e[0]}-{e[1]} has no colour left")
                    col[e] = min(free)
                return col
            work.append(("extend", (1, finish_edges)))
            work.append(("solve", child))
            return
        d = normalized(t.d)
        sub = find_substructure(g, d, t.k, t.l, check=False)
        if (t.k, t.l) == (3, 7):
            cls = classify_tw3(g, sub)
        elif (t.k, t.l) == (3, 6):
            cls = classify_pw3(g, sub)
        else:
            cls = classify_pw4(g, sub)
        if cls.tag == FIG6:
            self._aux(t, g, d, sub, cls, work)
            return
        choice = None
        if cls.tag in (FIG4B, FIG4C, FIG5):
            removed = set(cls.w_prime) | {sub.u}
        else:
            removed, choice = self._bipartite_subset(g, sub, cls)
        child = self._child(t, g.subgraph(set(g.vertices) - removed), d=restrict(d, set(g.vertices) - removed))
        self.trace.add(SUBSTRUCTURE, sorted(removed), t.depth, f"{cls.tag} u={sub.u}")
        work.append(("extend", (1, lambda col, g=g, t=t, cls=cls, removed=removed, choice=choice:
                                self._extend(g, t.lists, col, cls, removed, choice))))
        work.append(("solve", child))

    def _bipartite_subset(self, g, sub, cls):
        ws = set(cls.w_prime)
        part = closed_part(g, ws)
        b = kernel.Bipartition.of(part, set(part.vertices) - ws)
        if cls.tag == PW4_TWINS:
            return ws, None
        if len(ws) == 3:
            choice = kernel.choose_subset_k33(part, b)
        elif cls.tag == PW4_MINDEG3:
            choice = kernel.choose_subset_k44_mindeg3(part, b, sub.u)
        else:
            choice = kernel.choose_subset_k44(part, b)
        if choice.is_exception:
            raise InvariantViolation("hub-adjacent piece matched the non-choosable exception")
        return set(choice.w_subset), choice

    def _extend(self, g, lists, col, cls, removed, choice):
        part = closed_part(g, removed)
        rem = _remaining(g, lists, col, part)
        out = dict(col)
        try:
            if cls.tag == FIG4B:
                self.trace.add(GADGET, [], 0, "cherry-one")
                out.update(gadgets.colour_cherry_one(part, cls.roles, rem))
            elif cls.tag == FIG4C:
                self.trace.add(GADGET, [], 0, "cherry-two")
                out.update(gadgets.colour_cherry_two(part, cls.roles, rem))
            elif cls.tag == FIG5:
                r = cls.roles
                spare = ekey(r["u"], r["v'"])
                first = gadgets.semi_greedy(part, rem, {}, [spare])
                rest_edges = [e for e in part.edges if e != spare]
                pyr = Graph((), rest_edges)
                rem2 = remaining_lists(part, rem, first, rest_edges)
                roles = {k: r[k] for k in ("u", "v1", "v2", "w1", "w2")}
                out.update(first)
                self.trace.add(GADGET, [], 0, "4-pyramid")
                out.update(gadgets.colour_4pyramid(pyr, roles, rem2))
            elif cls.tag == PW4_TWINS:
                b = kernel.Bipartition.of(part, set(part.vertices) - removed)
                _assert_dominated(part, b.side_v, rem, cls.tag)
                out.update(kernel.v_choosable_colour(part, b, rem))
            else:
                side_v = set(part.vertices) - removed
                _assert_dominated(part, side_v, rem, cls.tag)
                out.update(kernel.colour_subset(choice, rem))
        except (ContractError, GreedyFailure) as exc:
            raise InvariantViolation(f"extension for {cls.tag} failed: {exc}") from exc
        return out

    def _aux(self, t: _Task, g: Graph, d, sub, cls, work):
        r = cls.roles
        ws = set(cls.w_prime)
        g1 = g.subgraph(set(g.vertices) - ws)
        core = [r["v1"], r["v2"], r["v3"], r["u"]]
        g_star, l_star, p = build_aux_graph(g1, core, r, t.lists)
        if size(g_star) >= size(g):
            raise InvariantViolation("auxiliary graph is not smaller")
        d1 = restrict(d, g1.vertices)
        d_star = _splice(d1, core, [sorted(set(core) | {p[0]}), sorted(set(core) | {p[1]})])
        if validate(g_star, d_star) or d_star.width > t.k:
            raise InvariantViolation("auxiliary decomposition is not valid")
        self.trace.add(AUX_GRAPH, sorted(ws), t.depth, f"FIG6 u={sub.u}")
        child = _Task(g_star, l_star, d_star, t.depth + 1, t.k, t.l)

        def finish(col_star, g=g, g1=g1, lists=t.lists):
            col = {e: col_star[e] for e in g1.edges}
            part = closed_part(g, ws)
            rem = _remaining(g, lists, col, part)
            slot = {1: r["v1"], 2: r["v2"], 3: r["v3"], 4: r["u"]}
            aux = {(i + 1, j): col_star[ekey(p[i], slot[j])] for i in (0, 1) for j in slot}
            try:
                col.update(kernel.colour_fig6_transfer(part, r, rem, aux))
            except (ContractError, GreedyFailure) as exc:
                raise InvariantViolation(f"transfer step failed: {exc}") from exc
            return col
        work.append(("extend", (1, finish)))
        work.append(("solve", child))


# ------------------------------------------------------------------ entry points

def _prepare_decomposition(g: Graph, d: Optional[TreeDecomposition], k: int, shape: str):
    if d is not None:
        issues = validate(g, d)
        if issues:
            raise InputError(f"supplied decomposition is invalid: {issues[0].kind} {issues[0].witness!r}")
        if d.width > k:
            raise InputError(f"supplied decomposition has width {d.width} > {k}")
        if shape == "path" and d.shape != "path":
            raise InputError("this regime needs a path decomposition")
        return d
    got = decompose_tw3(g) if shape == "tree" else decompose_pw(g, k)
    if got is None:
        what = "tree-width" if shape == "tree" else "path-width"
        raise InputError(f"graph has {what} larger than {k}")
    return got


def clique_path(g: Graph) -> Optional[TreeDecomposition]:
    """A width-3 path decomposition of a 3-tree whose 4-cliques line up, else None."""
    got = three_tree_order(g)
    if got is None:
        return None
    order, higher = got
    cliques = sorted({frozenset([v, *higher[v]]) for v in order if len(higher[v]) == 3})
    by_vertex: Dict[int, List[frozenset]] = {}
    for c in cliques:
        for v in c:
            by_vertex.setdefault(v, []).append(c)
    failed = set()

    def extend(seq, used, closed):
        if len(seq) == len(cliques):
            return seq
        key = (seq[-1], used)
        if key in failed:
            return None
        last = seq[-1]
        cands = {c for v in last for c in by_vertex[v]} - used
        for c in sorted(cands, key=sorted):
            if len(c & last) == 3 and not (c & closed):
                got = extend(seq + [c], used | {c}, closed | (last - c))
                if got:
                    return got
        failed.add(key)
        return None

    for start in cliques:
        got = extend([start], frozenset([start]), frozenset())
        if got:
            return from_path([sorted(c) for c in got])
    return None


def _check_three_tree_lists(g, lists):
    if g.max_degree() >= 7:
        return TW3_L7, None
    cid = match_small_3tree(g)
    if cid is not None:
        need = CHROMATIC_INDEX[cid]
        for e in g.edges:
            if len(lists[e]) < need:
                raise InputError(f"edge {e[0]}-{e[1]} has {len(lists[e])} colours; needs {need}")
        return CATALOGUE, cid
    return PW3_L6, None


def solve(req: SolveRequest) -> Tuple[Colouring, SolveTrace]:
    """Colour ``req.graph`` from ``req.lists`` under the requested regime."""
    g = req.graph
    lists = check_lists(g, req.lists)
    trace = SolveTrace(req.regime)
    regime = req.regime
    d = req.decomposition
    if regime == THREE_TREE:
        if not is_three_tree(g):
            raise InputError("graph is not a 3-tree")
        regime, cid = _check_three_tree_lists(g, lists)
        trace.route = regime
        if regime == CATALOGUE:
            trace.add(CATALOGUE, [], 0, cid)
            col = gadgets.colour_catalogue(g, cid, lists)
            _final_check(g, lists, col, trace)
            return col, trace
        if d is None:
            d = three_tree_decomposition(g) if regime == TW3_L7 else clique_path(g)
            if d is None:
                raise InvariantViolation("3-tree with max degree <= 6 has no clique path")
    if regime not in REGIMES:
        raise InputError(f"unknown regime {req.regime!r}")
    k, l, shape = REGIMES[regime]
    trace.route = regime
    bad = list_bound_issue(g, lists, l)
    if bad is not None:
        (a, b), need = bad
        raise InputError(f"edge {a}-{b} has {len(lists[(a, b)])} colours; needs {need}")
    d = _prepare_decomposition(g, d, k, shape)
    col = _Machine(trace).run(_Task(g, lists, d, 0, k, l))
    _final_check(g, lists, col, trace)
    return col, trace


def _final_check(g, lists, col, trace):
    issues = verify_colouring(g, lists, col)
    if issues:
        raise InvariantViolation(f"final colouring check failed: {issues[0].kind} {issues[0].witness!r}")
    if improper_pairs(g, col):
        raise InvariantViolation("final colouring is improper")


def solve_graph(g: Graph, lists: Lists, regime: str, decomposition=None):
    return solve(SolveRequest(g, lists, regime, decomposition))
