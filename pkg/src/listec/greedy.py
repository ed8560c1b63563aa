"""Semi-greedy colouring and the small selection helpers built on it."""
from itertools import permutations

from .errors import ContractError, GreedyFailure
from .graph import Colouring, Edge, Graph, Lists, ekey


def _free(g: Graph, lists: Lists, col: Colouring, e: Edge):
    taken = {col[f] for f in g.adjacent_edges(e) if f in col}
    return frozenset(lists[e]) - taken


def semi_greedy(g: Graph, lists: Lists, partial=None, edges=None) -> Colouring:
    """Extend ``partial`` to the uncoloured ``edges`` of ``g`` (default: all).

    Before each choice, edges with more free colours than uncoloured
    neighbours are set aside; they can always be finished later, in reverse
    order.  Among the rest, the edge with the fewest free colours (ties by
    key) takes its smallest free colour.
    """
    col = dict(partial or {})
    todo = set(g.edges if edges is None else (ekey(*e) for e in edges)) - set(col)
    nbrs = {e: [f for f in g.adjacent_edges(e)] for e in todo}
    deferred = []
    while todo:
        peeled = True
        while peeled:
            peeled = False
            for e in sorted(todo):
                live = sum(1 for f in nbrs[e] if f in todo)
                if len(_free(g, lists, col, e)) > live:
                    todo.remove(e)
                    deferred.append(e)
                    peeled = True
        if not todo:
            break
        e = min(todo, key=lambda x: (len(_free(g, lists, col, x)), x))
        free = _free(g, lists, col, e)
        if not free:
            raise GreedyFailure(e)
        col[e] = min(free)
        todo.remove(e)
    for e in reversed(deferred):
        free = _free(g, lists, col, e)
        if not free:  # pragma: no cover - ruled out by the peeling rule
            raise GreedyFailure(e)
        col[e] = min(free)
    return col


def compatible_pair(g: Graph, lists: Lists, e: Edge, f: Edge, among=None):
    """Colours ``(c1, c2)`` for the non-adjacent edges ``e`` and ``f``.

    The pair is compatible when ``c1 == c2`` or no edge adjacent to both
    (restricted to ``among`` when given) has both colours in its list.
    Shared colours are preferred, then pairs in lexicographic order.
    """
    e, f = ekey(*e), ekey(*f)
    if set(e) & set(f):
        raise ContractError(f"edges {e[0]}-{e[1]} and {f[0]}-{f[1]} are adjacent")
    common = set(g.adjacent_edges(e)) & set(g.adjacent_edges(f))
    if among is not None:
        common &= {ekey(*x) for x in among}
    le, lf = sorted(lists[e]), sorted(lists[f])
    shared = sorted(set(le) & set(lf))
    if shared:
        return shared[0], shared[0]
    for c1 in le:
        for c2 in lf:
            if all(not (c1 in lists[h] and c2 in lists[h]) for h in common):
                return c1, c2
    return None


def colour_trident(l1, l2, l3):
    """Distinct representatives for three lists of size at least 2, or None.

    None only happens when the three lists are the same 2-set.
    """
    lsts = [frozenset(x) for x in (l1, l2, l3)]
    if any(len(x) < 2 for x in lsts):
        raise ContractError("trident lists must have at least two colours")
    for i, j in permutations(range(3), 2):
        extra = sorted(lsts[i] - lsts[j])
        if extra:
            # j keeps its whole list, so it can go last
            k = 3 - i - j
            pick = [0, 0, 0]
            pick[i] = extra[0]
            pick[k] = min(lsts[k] - {pick[i]})
            pick[j] = min(lsts[j] - {pick[k]})
            return tuple(pick)
    if len(lsts[0]) >= 3:
        a = sorted(lsts[0])
        return a[0], a[1], a[2]
    return None
