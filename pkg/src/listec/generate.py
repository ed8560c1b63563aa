"""Random instances: k-trees, their subgraphs, and bounded path-width graphs."""
import random
from typing import Optional

from .decomp import TreeDecomposition, from_path, normalized
from .graph import Graph, Lists, ekey


def random_ktree(n: int, k: int = 3, seed=None, hub_bias: float = 0.0) -> Graph:
    """A k-tree on vertices 0..n-1 (n >= k+1).

    With ``hub_bias`` > 0 the attaching clique is chosen among those
    containing the current highest-degree vertices more often, which grows
    a few vertices of large degree.
    """
    if n < k + 1:
        raise ValueError(f"a {k}-tree needs at least {k + 1} vertices")
    rng = random.Random(seed)
    edges = [(a, b) for a in range(k + 1) for b in range(a + 1, k + 1)]
    deg = [k] * (k + 1)
    cliques = [tuple(x for x in range(k + 1) if x != y) for y in range(k + 1)]
    for v in range(k + 1, n):
        if hub_bias and rng.random() < hub_bias:
            c = max(rng.sample(cliques, min(6, len(cliques))), key=lambda q: sum(deg[x] for x in q))
        else:
            c = rng.choice(cliques)
        deg.append(k)
        for x in c:
            edges.append((x, v))
            deg[x] += 1
        for y in c:
            cliques.append(tuple(sorted([x for x in c if x != y] + [v])))
    return Graph(range(n), edges)


def random_subgraph(g: Graph, keep: float, seed=None) -> Graph:
    rng = random.Random(seed)
    return g.edge_subgraph([e for e in g.edges if rng.random() < keep])


def prune_degree_sum(g: Graph, l: int) -> Graph:
    """Delete edges breaking deg(v)+deg(w) >= max(l,deg v,deg w)+2 until none do, then drop isolated vertices."""
    from .substructure import check_degree_sum
    while True:
        bad = []
        for a, b in g.edges:
            da, db = g.degree(a), g.degree(b)
            if da + db < max(l, da, db) + 2:
                bad.append((a, b))
        if not bad:
            break
        g = g.without_edges(bad[:1])
    g = g.subgraph([v for v in g.vertices if g.degree(v) > 0])
    assert check_degree_sum(g, l) is None
    return g


def random_pathwidth(n: int, k: int, seed=None, hubs: int = 1, p_edge: float = 0.6,
                     p_hub: float = 0.95, hub_life: float = 0.1):
    """A graph of path-width <= k from an interval model, plus its path decomposition.

    At most k+1 intervals are open at once; up to ``hubs`` of them stay open
    long, which produces vertices of high degree.
    """
    rng = random.Random(seed)
    live, is_hub, bags, edges = [], set(), [], []
    v = 0
    while v < n or live:
        if v < n and len(live) < k + 1:
            hub = len(is_hub & set(live)) < hubs and rng.random() < 0.5
            for x in live:
                if rng.random() < (p_hub if x in is_hub or hub else p_edge):
                    edges.append((x, v))
            live.append(v)
            if hub:
                is_hub.add(v)
            bags.append(list(live))
            v += 1
            continue
        plain = [x for x in live if x not in is_hub]
        if plain and (v < n or rng.random() < 0.7):
            live.remove(rng.choice(plain))
        else:
            hubs_open = [x for x in live if x in is_hub]
            live.remove(rng.choice(hubs_open) if hubs_open else live[0])
        if v < n and plain and rng.random() < hub_life:
            hubs_open = [x for x in live if x in is_hub]
            if hubs_open:
                live.remove(rng.choice(hubs_open))
    g = Graph(range(n), edges)
    return g, normalized(from_path(bags or [[]]))


def random_lists(g: Graph, l: int, seed=None, universe: Optional[int] = None) -> Lists:
    """Lists of size max(l, deg v, deg w) drawn from {1..max(2*Delta, l)}."""
    rng = random.Random(seed)
    top = universe or max(2 * g.max_degree(), l)
    out = {}
    for a, b in g.edges:
        size = max(l, g.degree(a), g.degree(b))
        out[(a, b)] = frozenset(rng.sample(range(1, max(top, size) + 1), size))
    return out


def uniform_lists(g: Graph, size: int, seed=None, universe: Optional[int] = None) -> Lists:
    rng = random.Random(seed)
    top = universe or max(2 * size, 1)
    return {e: frozenset(rng.sample(range(1, top + 1), size)) for e in g.edges}


def ktree_instance(n, seed=None, keep=None, hub_bias=0.5):
    """A random 3-tree (or an edge subset of one when ``keep`` is given)."""
    g = random_ktree(n, 3, seed, hub_bias)
    if keep is not None:
        g = random_subgraph(g, keep, seed)
    return g


def fig1_graph() -> Graph:
    """Tree-width 3 with chromatic index 5: a 4-clique plus a vertex on three of its corners."""
    return Graph(range(1, 6), [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5)])


def single_bag(g: Graph) -> TreeDecomposition:
    return TreeDecomposition({0: list(g.vertices)}, (), "path")


def all_three_trees(n_max: int, max_degree: int = 6):
    """Every 3-tree on at most ``n_max`` vertices with the given degree cap, one per isomorphism class."""
    from .graph import find_isomorphism
    found = {}

    def grow(edges, cliques, n, deg):
        g = Graph(range(n), edges)
        key = (n, tuple(sorted(deg)))
        if any(find_isomorphism(h, g) is not None for h in found.get(key, [])):
            return
        found.setdefault(key, []).append(g)
        if n == n_max:
            return
        for c in cliques:
            if any(deg[x] >= max_degree for x in c):
                continue
            nd = list(deg) + [3]
            for x in c:
                nd[x] += 1
            grow(edges + [(x, n) for x in c],
                 cliques + [tuple(sorted(set(c) - {y} | {n})) for y in c], n + 1, nd)

    if n_max >= 4 and max_degree >= 3:
        grow([(a, b) for a in range(4) for b in range(a + 1, 4)],
             [tuple(x for x in range(4) if x != y) for y in range(4)], 4, [3, 3, 3, 3])
    return [g for gs in found.values() for g in gs]


def _hub_instance(tail, spokes, m):
    """Hub u next to a clique {v1, v2, v3}; ``tail`` extra degree-4 vertices and
    degree-2 ``spokes`` hang below u in a width-4 path decomposition."""
    v1, v2, v3, y, u = range(5)
    q = (u, v1, v2, v3)
    edges = [(a, b) for a in (v1, v2, v3, y) for b in (v1, v2, v3, y) if a < b]
    edges += [(u, x) for x in (v1, v2, v3, y)]
    bags, n = [], 5
    for _ in range(m):
        edges += [(n, a) for a in (v1, v2, v3, y)]
        bags.append([v1, v2, v3, y, n])
        n += 1
    bags.append([v1, v2, v3, y, u])
    for _ in range(tail):
        edges += [(n, a) for a in q]
        bags.append(list(q) + [n])
        n += 1
    for j in spokes:
        edges += [(n, u), (n, q[j])]
        bags.append(list(q) + [n])
        n += 1
    return Graph(range(n), edges), from_path(bags)


def aux_instance(m: int = 3):
    """Path-width 4 graph whose hub case needs the two-copy auxiliary graph."""
    return _hub_instance(3, (1, 2, 3), m)


def twins_instance(m: int = 3):
    """Path-width 4 graph whose hub has two degree-2 neighbours with equal neighbourhoods."""
    return _hub_instance(3, (1, 1, 2), m)
