"""Simple undirected graphs with canonical edge keys, plus list helpers.

Edges are tuples ``(a, b)`` with ``a < b``.  List assignments and colourings
are plain dicts keyed by those tuples.
"""
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from .errors import ContractError, InputError
from .limits import check_guard

Edge = Tuple[int, int]
Lists = Dict[Edge, FrozenSet[int]]
Colouring = Dict[Edge, int]

ISO_GUARD = 12


def ekey(a, b) -> Edge:
    """Canonical key of the edge between ``a`` and ``b``."""
    return (a, b) if a < b else (b, a)


class Graph:
    """Immutable simple graph on non-negative integer vertex ids."""

    __slots__ = ("_adj", "_edges")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()):
        adj: Dict[int, set] = {}
        for v in vertices:
            adj.setdefault(_vertex_id(v), set())
        for a, b in edges:
            a, b = _vertex_id(a), _vertex_id(b)
            if a == b:
                raise InputError(f"loop at vertex {a}")
            if b in adj.setdefault(a, set()):
                raise InputError(f"parallel edge {min(a, b)}-{max(a, b)}")
            adj[a].add(b)
            adj.setdefault(b, set()).add(a)
        self._adj = {v: frozenset(n) for v, n in sorted(adj.items())}
        self._edges = tuple(sorted((a, b) for a in self._adj for b in self._adj[a] if a < b))

    # basic accessors
    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(self._adj)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    def n(self):
        return len(self._adj)

    def m(self):
        return len(self._edges)

    def __contains__(self, v):
        return v in self._adj

    def has_edge(self, a, b):
        return a in self._adj and b in self._adj[a]

    def neighbours(self, v) -> FrozenSet[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InputError(f"unknown vertex {v}") from None

    def degree(self, v):
        return len(self.neighbours(v))

    def max_degree(self):
        return max((len(n) for n in self._adj.values()), default=0)

    def incident(self, v):
        """Edges at ``v`` in key order."""
        return sorted(ekey(v, x) for x in self.neighbours(v))

    def adjacent_edges(self, e: Edge):
        """Edges sharing exactly one endpoint with ``e``."""
        a, b = e
        out = [ekey(a, x) for x in self._adj[a] if x != b]
        out += [ekey(b, x) for x in self._adj[b] if x != a]
        return sorted(out)

    def components(self):
        """Vertex sets of connected components, ordered by smallest vertex."""
        seen, comps = set(), []
        for s in self._adj:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def subgraph(self, keep) -> "Graph":
        keep = set(keep)
        return Graph(sorted(keep), [e for e in self._edges if e[0] in keep and e[1] in keep])

    def edge_subgraph(self, edges) -> "Graph":
        """Graph formed by ``edges`` and their endpoints only."""
        return Graph((), edges)

    def without_edges(self, drop) -> "Graph":
        drop = set(drop)
        return Graph(self._adj, [e for e in self._edges if e not in drop])

    def relabel(self, mapping) -> "Graph":
        return Graph([mapping[v] for v in self._adj], [(mapping[a], mapping[b]) for a, b in self._edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n()}, m={self.m()})"


def _vertex_id(v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"vertex id {v!r} is not an integer")
    if v < 0:
        raise InputError(f"vertex id {v} is negative")
    return v


def _check_subset(g: Graph, w):
    for v in w:
        if v not in g:
            raise InputError(f"unknown vertex {v}")


def induced_delete(g: Graph, w) -> Graph:
    """G - W."""
    w = set(w)
    _check_subset(g, w)
    return g.subgraph(v for v in g.vertices if v not in w)


def boundary_graph(g: Graph, w) -> Graph:
    """The edges of ``g`` meeting ``w``, on vertex set W together with N(W)."""
    w = set(w)
    _check_subset(g, w)
    verts = set(w)
    for x in w:
        verts |= g.neighbours(x)
    return Graph(sorted(verts), [e for e in g.edges if e[0] in w or e[1] in w])


def improper_pairs(g: Graph, c: Colouring):
    """Pairs of adjacent coloured edges that share a colour."""
    bad = []
    for v in g.vertices:
        seen: Dict[int, Edge] = {}
        for e in g.incident(v):
            col = c.get(e)
            if col is None:
                continue
            if col in seen:
                bad.append((seen[col], e))
            else:
                seen[col] = e
    return bad


def used_at(g: Graph, c: Colouring, v):
    """Colours on coloured edges at ``v``."""
    return {c[e] for e in g.incident(v) if e in c}


def remaining_lists(g: Graph, lists: Lists, c: Colouring, f: Optional[Iterable[Edge]] = None) -> Lists:
    """Lists of the edges in ``f`` minus colours already used next to them.

    ``f`` defaults to every uncoloured edge.
    """
    f = [e for e in g.edges if e not in c] if f is None else [ekey(*e) for e in f]
    for e in f:
        if e in c:
            raise ContractError(f"edge {e[0]}-{e[1]} is both coloured and in the target set")
        if not g.has_edge(*e):
            raise ContractError(f"edge {e[0]}-{e[1]} not in graph")
    bad = improper_pairs(g, c)
    if bad:
        (a, b), (x, y) = bad[0]
        raise ContractError(f"colouring is improper at {a}-{b} and {x}-{y}")
    out = {}
    for e in f:
        taken = used_at(g, c, e[0]) | used_at(g, c, e[1])
        out[e] = frozenset(lists[e]) - taken
    return out


def check_lists(g: Graph, lists) -> Lists:
    """Normalise a list assignment for ``g`` into frozensets, validating the domain."""
    out = {}
    for e, lst in lists.items():
        k = ekey(*e)
        if not g.has_edge(*k):
            raise InputError(f"list given for non-edge {k[0]}-{k[1]}")
        s = frozenset(lst)
        if not s:
            raise InputError(f"empty list on edge {k[0]}-{k[1]}")
        if any((not isinstance(x, int)) or x < 0 for x in s):
            raise InputError(f"edge {k[0]}-{k[1]} has a colour that is not a non-negative integer")
        out[k] = s
    missing = [e for e in g.edges if e not in out]
    if missing:
        raise InputError(f"no list for edge {missing[0][0]}-{missing[0][1]}")
    return out


def find_isomorphism(g: Graph, h: Graph) -> Optional[Dict[int, int]]:
    """A bijection V(g) -> V(h) preserving adjacency, or None."""
    check_guard("find_isomorphism", max(g.n(), h.n()), ISO_GUARD)
    if g.n() != h.n() or g.m() != h.m():
        return None
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return None
    # map high-degree, well-connected vertices first
    order = []
    rest = set(g.vertices)
    while rest:
        best = max(rest, key=lambda v: (sum(1 for x in g.neighbours(v) if x in order), g.degree(v), -v))
        order.append(best)
        rest.remove(best)
    mapping: Dict[int, int] = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for x in h.vertices:
            if x in used or h.degree(x) != g.degree(v):
                continue
            if all(h.has_edge(mapping[y], x) == g.has_edge(y, v) for y in order[:i]):
                mapping[v] = x
                used.add(x)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(x)
        return False

    return dict(mapping) if extend(0) else None


class Issue(tuple):
    """One finding of a validation routine: ``(kind, witness)``."""

    __slots__ = ()

    def __new__(cls, kind, witness=None):
        return tuple.__new__(cls, (kind, witness))

    @property
    def kind(self):
        return self[0]

    @property
    def witness(self):
        return self[1]

    def __repr__(self):
        return f"Issue({self[0]!r}, {self[1]!r})"
