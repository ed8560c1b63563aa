"""Instance builders shared by the unit, property and acceptance suites."""
import random

from listec import gadgets as G
from listec.catalogue import CATALOGUE, CHROMATIC_INDEX
from listec.decomp import decompose_pw
from listec.generate import ktree_instance, prune_degree_sum, random_lists, random_pathwidth
from listec.graph import Graph, ekey
from listec.kernel import FIG6_PAIRS


def sized_lists(rng, sizes, universe):
    return {e: frozenset(rng.sample(range(1, max(universe, s) + 1), s)) for e, s in sizes.items()}


def role_ids(rng, names, pool=100):
    return dict(zip(names, rng.sample(range(pool), len(names))))


def role_sizes(roles, table):
    return {ekey(roles[a], roles[b]): s for (a, b), s in table.items()}


# ------------------------------------------------------------ gadgets

def cycle_case(rng):
    n = rng.randint(3, 8)
    vs = rng.sample(range(50), n)
    cyc = [ekey(vs[i], vs[(i + 1) % n]) for i in range(n)]
    if rng.random() < 0.3:
        same = frozenset(rng.sample(range(1, 5), 2))
        lists = {e: same for e in cyc}
    else:
        lists = sized_lists(rng, {e: 2 for e in cyc}, 4)
    g = Graph((), cyc)
    return g, lists, lambda: G.colour_cycle(g, lists)


def balloon_case(rng):
    n = rng.randint(3, 7)
    vs = rng.sample(range(50), n + 1)
    cyc = [ekey(vs[0], vs[1])] + [ekey(vs[i], vs[i + 1]) for i in range(1, n - 1)] + [ekey(vs[n - 1], vs[0])]
    f = ekey(vs[0], vs[n])
    sizes = {e: 2 for e in cyc + [f]}
    sizes[cyc[0]] = 3
    lists = sized_lists(rng, sizes, rng.choice([3, 5, 9]))
    if rng.random() < 0.3:
        lists[f] = lists[cyc[-1]]
    g = Graph((), cyc + [f])
    return g, lists, lambda: G.colour_balloon(cyc, f, lists)


def eight_case(rng):
    n, m = rng.randint(3, 6), rng.randint(3, 6)
    vs = rng.sample(range(60), n + m - 1)
    v = vs[0]
    a, b = [v] + vs[1:n], [v] + vs[n:n + m - 1]
    gs = [ekey(a[i], a[(i + 1) % n]) for i in range(n)]
    fs = [ekey(b[i], b[(i + 1) % m]) for i in range(m)]
    sizes = {e: 2 for e in gs + fs}
    sizes[gs[-1]] = sizes[fs[-1]] = 4
    lists = sized_lists(rng, sizes, rng.choice([4, 6, 12]))
    if rng.random() < 0.3:
        lists[fs[0]] = lists[gs[0]]
    g = Graph((), gs + fs)
    return g, lists, lambda: G.colour_eight(gs, fs, v, lists)


def pyramid_case(rng):
    r = role_ids(rng, ["u", "v1", "v2", "w1", "w2"])
    sizes = role_sizes(r, G.PYRAMID_SIZES)
    lists = sized_lists(rng, sizes, rng.choice([5, 7, 15]))
    g = Graph((), sizes)
    return g, lists, lambda: G.colour_4pyramid(g, r, lists)


def cherry_one_case(rng):
    r = role_ids(rng, ["u", "v1", "v2", "v3", "w1", "w2", "w3"])
    sizes = role_sizes(r, G.CHERRY_ONE_SIZES)
    lists = sized_lists(rng, sizes, rng.choice([7, 9, 21]))
    g = Graph((), sizes)
    return g, lists, lambda: G.colour_cherry_one(g, r, lists)


def cherry_two_case(rng):
    r = role_ids(rng, ["u", "v1", "v2", "v3", "w1", "w2", "w3"])
    sizes = role_sizes(r, G.CHERRY_TWO_SIZES)
    lists = sized_lists(rng, sizes, rng.choice([7, 9, 21]))
    if rng.random() < 0.5:
        # the hexagon edges at each v share that v's spoke list, which drives the late branches
        for v in ("v1", "v2", "v3"):
            for w in ("w1", "w2", "w3"):
                e = ekey(r[v], r[w])
                if e in lists:
                    lists[e] = lists[ekey(r["u"], r[v])]
    g = Graph((), sizes)
    return g, lists, lambda: G.colour_cherry_two(g, r, lists)


def catalogue_case(rng, cid):
    perm = rng.sample(range(100), 8)
    g = CATALOGUE[cid].relabel({i + 1: perm[i] for i in range(8)})
    k = CHROMATIC_INDEX[cid]
    lists = sized_lists(rng, {e: k for e in g.edges}, rng.choice([k, k + 2, 3 * k]))
    return g, lists, lambda: G.colour_catalogue(g, cid, lists)


def _cherry_bipartite_case(rng):
    from listec.kernel import FIG8_SIZES, colour_cherry_bipartite
    r = role_ids(rng, ["u", "v1", "v2", "v3", "w1", "w2", "w3"])
    sizes = role_sizes(r, FIG8_SIZES)
    lists = sized_lists(rng, sizes, rng.choice([4, 6, 12]))
    g = Graph((), sizes)
    return g, lists, lambda: colour_cherry_bipartite(g, r, lists)


def fig6_case(rng):
    """The 4+4 transfer shape with a proper stand-in colouring drawn from the w1 lists."""
    from listec.kernel import colour_fig6_transfer
    r = role_ids(rng, ["u", "v1", "v2", "v3", "w1", "w2", "w3", "w4"])
    sizes = {}
    for a, b in FIG6_PAIRS:
        sizes[ekey(r[a], r[b])] = 4 if a == "u" else 2
    universe = rng.choice([4, 5, 8])
    while True:
        lists = sized_lists(rng, sizes, universe)
        if rng.random() < 0.4:
            for i in (1, 2, 3):
                lists[ekey(r[f"v{i}"], r[f"w{i + 1}"])] = lists[ekey(r[f"v{i}"], r["w1"])]
        slots = {1: r["v1"], 2: r["v2"], 3: r["v3"], 4: r["u"]}
        aux = _stand_in(rng, {j: lists[ekey(slots[j], r["w1"])] for j in slots})
        if aux is not None:
            break
    g = Graph((), sizes)
    return g, lists, lambda: colour_fig6_transfer(g, r, lists, aux)


def _stand_in(rng, slot_lists):
    """A proper colouring of two copies joined to four slots, or None."""
    opts = []
    for j in (1, 2, 3, 4):
        pairs = [(a, b) for a in slot_lists[j] for b in slot_lists[j] if a != b]
        rng.shuffle(pairs)
        opts.append(pairs)

    def rec(j, used1, used2, out):
        if j == 5:
            return out
        for a, b in opts[j - 1]:
            if a not in used1 and b not in used2:
                got = rec(j + 1, used1 | {a}, used2 | {b}, {**out, (1, j): a, (2, j): b})
                if got:
                    return got
        return None
    return rec(1, frozenset(), frozenset(), {})


GADGET_CASES = {
    "cycle": cycle_case,
    "balloon": balloon_case,
    "eight": eight_case,
    "4-pyramid": pyramid_case,
    "cherry-one": cherry_one_case,
    "cherry-two": cherry_two_case,
    "cherry-bipartite": _cherry_bipartite_case,
    "fig6-transfer": fig6_case,
}
for _cid in CATALOGUE:
    GADGET_CASES[f"catalogue-{_cid}"] = (lambda c: (lambda rng: catalogue_case(rng, c)))(_cid)


# ------------------------------------------------------------ regime instances

def tw3_instance(seed):
    """Random subgraph of a random 3-tree (n <= 50) with max degree >= 7, plus lists."""
    rng = random.Random(seed)
    while True:
        g = ktree_instance(rng.randint(10, 50), seed=rng.randrange(10 ** 9), keep=rng.uniform(0.5, 1.0),
                           hub_bias=rng.uniform(0.3, 0.9))
        if g.max_degree() >= 7:
            return g, random_lists(g, 7, seed=rng.randrange(10 ** 9))


def pw_instance(seed, k):
    """Graph of path-width <= k on at most 24 vertices, with its decomposition and lists."""
    rng = random.Random(seed)
    l = 6 if k == 3 else 10
    while True:
        g, d = random_pathwidth(rng.randint(8, 24), k, seed=rng.randrange(10 ** 9), hubs=rng.randint(1, 3),
                                p_edge=rng.uniform(0.3, 0.9))
        if g.m():
            return g, d, random_lists(g, l, seed=rng.randrange(10 ** 9))


def substructure_instance(seed):
    """A (graph, decomposition, k, l) meeting the degree-sum inequality; a mix of widths."""
    rng = random.Random(seed)
    kind = seed % 3
    while True:
        if kind == 0:
            g = prune_degree_sum(ktree_instance(rng.randint(10, 40), seed=rng.randrange(10 ** 9),
                                                keep=rng.uniform(0.6, 1.0), hub_bias=0.7), 7)
            k, l = 3, 7
        else:
            k, l = (3, 6) if kind == 1 else (4, 10)
            g, _ = random_pathwidth(rng.randint(10, 24), k, seed=rng.randrange(10 ** 9), hubs=2,
                                    p_edge=rng.uniform(0.4, 0.9))
            g = prune_degree_sum(g, l)
        if g.m() == 0:
            continue
        if k == 3 and l == 7:
            from listec.decomp import decompose_tw3
            d = decompose_tw3(g)
        else:
            d = decompose_pw(g, k)
        return g, d, k, l
