"""Tree and path decompositions: representation, checks and construction."""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import ContractError
from .graph import Graph, Issue
from .limits import check_guard

PW_GUARD = 24


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags on the nodes of a tree.  ``shape`` is ``"path"`` or ``"tree"``."""

    bags: Dict[int, Tuple[int, ...]]
    tree_edges: Tuple[Tuple[int, int], ...]
    shape: str = "tree"
    root: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "bags", {int(t): tuple(sorted(set(b))) for t, b in self.bags.items()})
        object.__setattr__(self, "tree_edges",
                           tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.tree_edges)))
        if self.shape not in ("tree", "path"):
            raise ContractError(f"unknown decomposition shape {self.shape!r}")

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def tree_adj(self) -> Dict[int, List[int]]:
        adj = {t: [] for t in self.bags}
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for t in adj:
            adj[t].sort()
        return adj

    def bag(self, t) -> FrozenSet[int]:
        return frozenset(self.bags[t])


def _tree_issues(d: TreeDecomposition):
    out = []
    nodes = set(d.bags)
    for a, b in d.tree_edges:
        if a not in nodes or b not in nodes:
            out.append(Issue("unknown-node", (a, b)))
        elif a == b:
            out.append(Issue("tree-loop", a))
    if out:
        return out
    if len(set(d.tree_edges)) != len(d.tree_edges):
        out.append(Issue("repeated-tree-edge", None))
    if nodes and len(d.tree_edges) != len(nodes) - 1:
        out.append(Issue("not-a-tree", f"{len(nodes)} nodes, {len(d.tree_edges)} tree edges"))
    elif nodes:
        seen = _reach(d.tree_adj(), min(nodes), nodes)
        if seen != nodes:
            out.append(Issue("not-a-tree", sorted(nodes - seen)[0]))
    if not out and d.shape == "path":
        deg = d.tree_adj()
        bad = [t for t in nodes if len(deg[t]) > 2]
        if bad:
            out.append(Issue("not-a-path", bad[0]))
    return out


def _reach(adj, start, allowed):
    seen = {start}
    todo = [start]
    while todo:
        t = todo.pop()
        for s in adj[t]:
            if s in allowed and s not in seen:
                seen.add(s)
                todo.append(s)
    return seen


def validate(g: Graph, d: TreeDecomposition) -> List[Issue]:
    """Every violated decomposition axiom, each with a witness.  Empty means valid."""
    out = _tree_issues(d)
    if out:
        return out
    if d.shape == "path":
        branch = [t for t, nb in d.tree_adj().items() if len(nb) > 2]
        if branch:
            return [Issue("not-a-path", min(branch))]
    covered = set()
    for b in d.bags.values():
        covered.update(b)
    for v in g.vertices:
        if v not in covered:
            out.append(Issue("missing-vertex", v))
    for v in sorted(covered - set(g.vertices)):
        out.append(Issue("unknown-vertex", v))
    sets = {t: set(b) for t, b in d.bags.items()}
    for a, b in g.edges:
        if not any(a in s and b in s for s in sets.values()):
            out.append(Issue("uncovered-edge", (a, b)))
    adj = d.tree_adj()
    for v in g.vertices:
        holders = {t for t, s in sets.items() if v in s}
        if holders and _reach(adj, min(holders), holders) != holders:
            out.append(Issue("disconnected-trace", v))
    return out


def is_valid(g: Graph, d: TreeDecomposition) -> bool:
    return not validate(g, d)


def require_valid(g: Graph, d: TreeDecomposition, what="decomposition"):
    issues = validate(g, d)
    if issues:
        raise ContractError(f"{what} is invalid: {issues[0].kind} {issues[0].witness!r}")


# ------------------------------------------------------------------ reshaping

def path_order(d: TreeDecomposition) -> List[int]:
    """Nodes of a path-shaped decomposition from one end to the other (smaller end first)."""
    adj = d.tree_adj()
    if not adj:
        return []
    ends = [t for t in adj if len(adj[t]) <= 1]
    if any(len(a) > 2 for a in adj.values()) or not ends:
        raise ContractError("decomposition tree is not a path")
    order, prev, cur = [], None, min(ends)
    while cur is not None:
        order.append(cur)
        nxt = [s for s in adj[cur] if s != prev]
        prev, cur = cur, (nxt[0] if nxt else None)
    return order


def from_path(bags: List, start_id: int = 0) -> TreeDecomposition:
    ids = list(range(start_id, start_id + len(bags)))
    return TreeDecomposition(dict(zip(ids, bags)), tuple(zip(ids, ids[1:])), "path")


def relabel_dense(d: TreeDecomposition) -> TreeDecomposition:
    """Renumber nodes 0..n-1; a path is numbered from its smaller end."""
    order = path_order(d) if d.shape == "path" else d.nodes
    new = {t: i for i, t in enumerate(order)}
    return TreeDecomposition({new[t]: d.bags[t] for t in order},
                             tuple((new[a], new[b]) for a, b in d.tree_edges), d.shape,
                             None if d.root is None else new[d.root])


def normalized(d: TreeDecomposition) -> TreeDecomposition:
    """Contract every node whose bag is contained in a neighbour's bag.

    Afterwards no two adjacent bags are equal (nor nested), which is what
    the separator argument in the substructure search needs.
    """
    bags = {t: set(b) for t, b in d.bags.items()}
    adj = {t: set(s) for t, s in d.tree_adj().items()}
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for t in sorted(bags):
            host = next((s for s in sorted(adj[t]) if bags[t] <= bags[s]), None)
            if host is None:
                continue
            for s in adj[t]:
                if s != host:
                    adj[s].discard(t)
                    adj[s].add(host)
                    adj[host].add(s)
            adj[host].discard(t)
            del adj[t], bags[t]
            changed = True
            break
    edges = {tuple(sorted((a, b))) for a in adj for b in adj[a]}
    root = d.root if d.root in bags else None
    return relabel_dense(TreeDecomposition(bags, tuple(edges), d.shape, root))


def restrict(d: TreeDecomposition, keep) -> TreeDecomposition:
    """Intersect every bag with ``keep``.  Node ids and the tree are unchanged."""
    keep = set(keep)
    return TreeDecomposition({t: [v for v in b if v in keep] for t, b in d.bags.items()},
                             d.tree_edges, d.shape, d.root)


def append_path(d: TreeDecomposition, end: int, bags: List) -> Tuple[TreeDecomposition, int]:
    """Hang a chain of new bags off node ``end``.  Returns the new decomposition and last node."""
    nxt = max(d.bags, default=-1) + 1
    new_bags = dict(d.bags)
    edges = list(d.tree_edges)
    prev = end
    for b in bags:
        new_bags[nxt] = b
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    if d.shape == "path" and bags and len(d.tree_adj()[end]) > 1:
        raise ContractError("can only extend a path decomposition at an end node")
    return TreeDecomposition(new_bags, tuple(edges), d.shape, d.root), prev


# ------------------------------------------------------------------ heights

@dataclass
class RootedHeights:
    root: int
    heights: Dict[int, int]
    parent: Dict[int, Optional[int]]
    top: Dict[int, int] = field(default_factory=dict)

    def subtree(self, t) -> List[int]:
        """Nodes whose path to the root passes through ``t``."""
        out = []
        for s in self.heights:
            x = s
            while x is not None and x != t:
                x = self.parent[x]
            if x == t:
                out.append(s)
        return sorted(out)


def root_and_measure(d: TreeDecomposition, r: int, g: Optional[Graph] = None) -> RootedHeights:
    """Heights from ``r`` and, per vertex, the highest node whose bag holds it."""
    if r not in d.bags:
        raise ContractError(f"root {r} is not a decomposition node")
    issues = _tree_issues(d) if g is None else validate(g, d)
    if issues:
        raise ContractError(f"decomposition is invalid: {issues[0].kind} {issues[0].witness!r}")
    adj = d.tree_adj()
    heights, parent = {r: 0}, {r: None}
    q = deque([r])
    while q:
        t = q.popleft()
        for s in adj[t]:
            if s not in heights:
                heights[s] = heights[t] + 1
                parent[s] = t
                q.append(s)
    top: Dict[int, int] = {}
    for t in sorted(d.bags, key=lambda x: (heights[x], x)):
        for v in d.bags[t]:
            top.setdefault(v, t)
    return RootedHeights(r, heights, parent, top)


def check_cutset(g: Graph, d: TreeDecomposition, te) -> bool:
    """Does the intersection of the two bags on tree edge ``te`` separate the two sides?"""
    a, b = te
    adj = d.tree_adj()
    if b not in adj.get(a, ()):
        raise ContractError(f"{a}-{b} is not a tree edge")
    side_a = _reach({t: [s for s in adj[t] if {t, s} != {a, b}] for t in adj}, a, set(adj))
    sep = d.bag(a) & d.bag(b)
    left = set().union(*(d.bags[t] for t in side_a)) - sep
    right = set().union(*(d.bags[t] for t in adj if t not in side_a)) - sep
    if not left or not right:
        return True
    seen = set(left)
    todo = list(left)
    while todo:
        x = todo.pop()
        for y in g.neighbours(x):
            if y in sep or y in seen:
                continue
            if y in right:
                return False
            seen.add(y)
            todo.append(y)
    return True


# ------------------------------------------------------------------ tree-width <= 3

def _from_elimination(g: Graph, order: List[int], higher: Dict[int, FrozenSet[int]]) -> TreeDecomposition:
    """Bags {v} + later neighbours; each hangs off the bag of its first-eliminated later neighbour."""
    pos = {v: i for i, v in enumerate(order)}
    bags, edges, roots = {}, [], []
    for i, v in enumerate(order):
        bags[i] = [v, *higher[v]]
        if higher[v]:
            edges.append((i, pos[min(higher[v], key=pos.get)]))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    if not bags:
        bags[0] = []
    return normalized(TreeDecomposition(bags, tuple(edges), "tree"))


def _safe_pick(adj):
    """A vertex whose elimination keeps tree-width <= 3 answerable, or None."""
    best = None
    for v in sorted(adj):
        nb = adj[v]
        d = len(nb)
        if d <= 2:
            return v
        if d == 3 and best is None:
            a, b, c = sorted(nb)
            # almost simplicial: one pair of neighbours already adjacent
            if b in adj[a] or c in adj[a] or c in adj[b]:
                best = v
    return best


def _buddy(adj):
    """Two degree-3 vertices with the same neighbourhood; eliminating both is safe."""
    seen = {}
    for v in sorted(adj):
        if len(adj[v]) == 3:
            key = frozenset(adj[v])
            if key in seen:
                return seen[key], v
            seen[key] = v
    return None


def _eliminate(adj, v):
    nb = adj.pop(v)
    for x in nb:
        adj[x] = (adj[x] - {v}) | (nb - {x})
    return nb


def decompose_tw3(g: Graph) -> Optional[TreeDecomposition]:
    """A width-<=3 decomposition, or None when the tree-width exceeds 3."""
    start = {v: frozenset(g.neighbours(v)) for v in g.vertices}
    failed = set()

    def solve(adj, order, higher):
        adj = dict(adj)
        order, higher = list(order), dict(higher)
        while adj:
            v = _safe_pick(adj)
            if v is not None:
                higher[v] = _eliminate(adj, v)
                order.append(v)
                continue
            pair = _buddy(adj)
            if pair is not None:
                for x in pair:
                    higher[x] = _eliminate(adj, x)
                    order.append(x)
                continue
            break
        if not adj:
            return order, higher
        key = frozenset((v, n) for v, ns in adj.items() for n in ns)
        if key in failed:
            return None
        for v in sorted(adj, key=lambda x: (len(adj[x]), x)):
            if len(adj[v]) > 3:
                break
            trial = dict(adj)
            h = dict(higher)
            h[v] = _eliminate(trial, v)
            got = solve(trial, order + [v], h)
            if got is not None:
                return got
        failed.add(key)
        return None

    got = solve(start, [], {})
    if got is None:
        return None
    return _from_elimination(g, *got)


# ------------------------------------------------------------------ path-width

def _vertex_separation_order(g: Graph, comp: List[int], k: int) -> Optional[List[int]]:
    nbr = {v: g.neighbours(v) for v in comp}
    allv = frozenset(comp)
    failed = set()

    def boundary(placed):
        return frozenset(v for v in placed if not nbr[v] <= placed)

    def go(placed, order):
        if placed == allv:
            return order
        if placed in failed:
            return None
        bd = boundary(placed)
        # a vertex with every neighbour placed never hurts to place now
        for v in sorted(allv - placed):
            if nbr[v] <= placed:
                return go(placed | {v}, order + [v])
        cands = []
        for v in sorted(allv - placed):
            nxt = placed | {v}
            nb = boundary(nxt)
            if len(nb) <= k:
                cands.append((len(nb), -len(nbr[v] & bd), v, nxt))
        cands.sort()
        for _, _, v, nxt in cands:
            got = go(nxt, order + [v])
            if got is not None:
                return got
        failed.add(placed)
        return None

    return go(frozenset(), [])


def decompose_pw(g: Graph, k: int) -> Optional[TreeDecomposition]:
    """A path decomposition of width <= k, or None if the path-width is larger."""
    if k < 0:
        raise ContractError("width bound must be non-negative")
    bags = []
    for comp in g.components():
        check_guard("decompose_pw component size", len(comp), PW_GUARD)
        order = _vertex_separation_order(g, sorted(comp), k)
        if order is None:
            return None
        placed = set()
        for v in order:
            bd = {x for x in placed if not g.neighbours(x) <= placed}
            bags.append(bd | {v})
            placed.add(v)
    if not bags:
        bags = [[]]
    return normalized(from_path(bags))


def three_tree_decomposition(g: Graph) -> Optional[TreeDecomposition]:
    """Clique-tree decomposition of a 3-tree (bags are its 4-cliques), or None."""
    from .substructure import three_tree_order
    got = three_tree_order(g)
    if got is None:
        return None
    order, higher = got
    return _from_elimination(g, order, higher)
