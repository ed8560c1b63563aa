"""Command-line front end.

Exit codes: 0 success, 2 bad input or unmet list bound, 3 size guard hit,
4 internal invariant failure, 1 verification found problems.
"""
import argparse
import json
import random
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import generate as gen
from .decomp import decompose_pw, decompose_tw3, validate
from .errors import CapacityError, ContractError, InputError, InvariantViolation, ListecError
from .graph import Graph
from .instance import (Instance, edge_name, emit_colouring, emit_decomposition, emit_instance,
                       parse_colouring, parse_decomposition, parse_instance, to_dot)
from .oracle import chromatic_index, exists_colouring, verify_colouring
from .solver import (PW3_L6, PW4_L10, REGIMES, THREE_TREE, TW3_L7, SolveRequest, list_bound_issue,
                     solve)
from .substructure import is_three_tree

REGIME_FLAGS = {"tw3": TW3_L7, "pw3": PW3_L6, "pw4": PW4_L10, "3tree": THREE_TREE}
FLAG_OF = {v: k for k, v in REGIME_FLAGS.items()}
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3, 4
GENERATE_KINDS = ("ktree3", "sub-tw3", "pw3", "pw4-ish", "pw4-aux", "pw4-twins")


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _regime_of(name):
    if name not in REGIME_FLAGS and name != "auto":
        raise InputError(f"unknown regime {name!r}; choose from {', '.join([*REGIME_FLAGS, 'auto'])}")
    return REGIME_FLAGS.get(name, "auto")


def pick_regime(g: Graph, lists, decomposition=None):
    """Weakest regime whose width and list-size requirements the instance meets."""
    if g.max_degree() >= 7 and list_bound_issue(g, lists, 7) is None:
        if decompose_tw3(g) is not None:
            return TW3_L7
    if is_three_tree(g):
        return THREE_TREE
    for regime in (PW3_L6, PW4_L10):
        k, l, _ = REGIMES[regime]
        if list_bound_issue(g, lists, l) is not None:
            continue
        if decomposition is not None and decomposition.width <= k and not validate(g, decomposition):
            return regime
        try:
            if decompose_pw(g, k) is not None:
                return regime
        except CapacityError:
            continue
    raise InputError("no regime applies: the lists are too short or the width too large")


def _load(args):
    inst = parse_instance(_read(args.instance))
    if getattr(args, "decomposition", None):
        inst.decomposition = parse_decomposition(_read(args.decomposition))
    return inst


def _trace_rows(trace):
    return [{"kind": s.kind, "removed": list(s.removed), "depth": s.depth, "detail": s.detail}
            for s in trace.steps]


def cmd_solve(args, out):
    inst = _load(args)
    flag = args.regime or inst.regime or "auto"
    regime = _regime_of(flag)
    chosen = regime
    if regime == "auto":
        chosen = pick_regime(inst.graph, inst.lists, inst.decomposition)
    col, trace = solve(SolveRequest(inst.graph, inst.lists, chosen, inst.decomposition, args.seed))
    if args.json:
        doc = {"regime": FLAG_OF[chosen], "route": trace.route,
               "colouring": {edge_name(e): c for e, c in sorted(col.items())}}
        if args.trace:
            doc["trace"] = _trace_rows(trace)
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        if regime == "auto":
            out.write(f"# regime {FLAG_OF[chosen]}\n")
        out.write(emit_colouring(col))
        if args.trace:
            for s in trace.steps:
                removed = " ".join(map(str, s.removed))
                out.write(f"# {'  ' * s.depth}{s.kind} {s.detail} [{removed}]\n".replace("  [", " ["))
    return EXIT_OK


def cmd_verify(args, out):
    inst = _load(args)
    col = parse_colouring(_read(args.colouring))
    issues = verify_colouring(inst.graph, inst.lists, col)
    if args.json:
        out.write(json.dumps({"ok": not issues, "issues": [[i.kind, repr(i.witness)] for i in issues]},
                             indent=2) + "\n")
    else:
        for i in issues:
            out.write(f"{i.kind} {i.witness!r}\n")
        out.write("ok\n" if not issues else f"{len(issues)} problem(s)\n")
    return EXIT_OK if not issues else EXIT_FAIL


def cmd_oracle(args, out):
    inst = _load(args)
    res = exists_colouring(inst.graph, inst.lists)
    doc = {"colourable": res.colourable, "nodes": res.nodes}
    if args.chromatic_index:
        doc["chromatic_index"] = chromatic_index(inst.graph)
    if args.json:
        if res.witness is not None:
            doc["witness"] = {edge_name(e): c for e, c in sorted(res.witness.items())}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(("colourable" if res.colourable else "not colourable") + f" ({res.nodes} nodes)\n")
        if "chromatic_index" in doc:
            out.write(f"chromatic index {doc['chromatic_index']}\n")
        if res.witness is not None:
            out.write(emit_colouring(res.witness))
    return EXIT_OK


def cmd_decompose(args, out):
    inst = _load(args)
    g = inst.graph
    d = decompose_tw3(g) if args.width == "tw3" else decompose_pw(g, 3 if args.width == "pw3" else 4)
    if d is None:
        out.write(f"no decomposition of kind {args.width}\n")
        return EXIT_INPUT
    out.write(emit_decomposition(d))
    return EXIT_OK


def generate_instance(kind, n, seed):
    """Build an instance with lists of the regime's minimum sizes."""
    if kind == "ktree3":
        g, d, regime = gen.random_ktree(n, 3, seed), None, "3tree"
        from .decomp import three_tree_decomposition
        d = three_tree_decomposition(g)
    elif kind == "sub-tw3":
        g = gen.ktree_instance(max(n, 4), seed, keep=0.7)
        d, regime = decompose_tw3(g), "tw3"
    elif kind in ("pw3", "pw4-ish"):
        k = 3 if kind == "pw3" else 4
        g, d = gen.random_pathwidth(n, k, seed, hubs=2)
        regime = "pw3" if k == 3 else "pw4"
    elif kind in ("pw4-aux", "pw4-twins"):
        maker = gen.aux_instance if kind == "pw4-aux" else gen.twins_instance
        g, d = maker(max(n, 2))
        regime = "pw4"
    else:
        raise InputError(f"unknown kind {kind!r}; choose from {', '.join(GENERATE_KINDS)}")
    if regime == "3tree":
        lists = gen.uniform_lists(g, _three_tree_size(g), seed, universe=max(2 * g.max_degree(), 1))
    else:
        lists = gen.random_lists(g, REGIMES[REGIME_FLAGS[regime]][1], seed)
    return Instance(g, lists, regime, d)


def _three_tree_size(g):
    if g.max_degree() >= 6:
        return g.max_degree()
    return chromatic_index(g)


def cmd_generate(args, out):
    if args.n > 10 ** 4:
        raise InputError("n must be at most 10000")
    out.write(emit_instance(generate_instance(args.kind, args.n, args.seed)))
    return EXIT_OK


def _fuzz_one(regime, seed):
    rng = random.Random(seed)
    kind = {TW3_L7: "sub-tw3", PW3_L6: "pw3", PW4_L10: "pw4-ish", THREE_TREE: "ktree3"}[regime]
    inst = generate_instance(kind, rng.randint(8, 30), seed)
    t0 = time.perf_counter()
    try:
        col, _ = solve(SolveRequest(inst.graph, inst.lists, regime, inst.decomposition, seed))
        issues = verify_colouring(inst.graph, inst.lists, col)
        err = None if not issues else f"{issues[0].kind} {issues[0].witness!r}"
    except ListecError as exc:
        err = f"{type(exc).__name__}: {exc}"
    return seed, err, time.perf_counter() - t0


def cmd_fuzz(args, out):
    regime = _regime_of(args.regime)
    if regime == "auto":
        raise InputError("fuzz needs a concrete regime")
    seeds = [args.seed + i for i in range(args.trials)]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(lambda s: _fuzz_one(regime, s), seeds))
    fails = [(s, e) for s, e, _ in results if e]
    times = sorted(t for _, _, t in results)
    q = statistics.quantiles(times, n=100) if len(times) > 1 else times * 99
    report = {"regime": args.regime, "trials": len(results), "failures": len(fails),
              "failed": [{"seed": s, "error": e} for s, e in fails],
              "time_p50": q[49], "time_p90": q[89], "time_max": times[-1] if times else 0.0}
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(f"{args.regime}: {len(results)} trials, {len(fails)} failures, "
                  f"p50 {report['time_p50'] * 1000:.1f} ms, p90 {report['time_p90'] * 1000:.1f} ms\n")
        for s, e in fails:
            out.write(f"  seed {s}: {e}\n")
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_export_dot(args, out):
    inst = _load(args)
    col = parse_colouring(_read(args.colouring)) if args.colouring else None
    out.write(to_dot(inst.graph, col))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="listec", description="List edge-colouring for graphs of small width.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, decomp=True):
        sp.add_argument("instance")
        if decomp:
            sp.add_argument("--decomposition", metavar="FILE")
        sp.add_argument("--json", action="store_true")

    s = sub.add_parser("solve", help="colour an instance")
    common(s)
    s.add_argument("--regime", choices=[*REGIME_FLAGS, "auto"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a colouring against an instance")
    common(s, decomp=False)
    s.add_argument("colouring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exact search for a colouring")
    common(s, decomp=False)
    s.add_argument("--chromatic-index", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("decompose", help="print a decomposition")
    common(s, decomp=False)
    s.add_argument("--width", choices=["tw3", "pw3", "pw4"], default="tw3")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("generate", help="print a random instance")
    s.add_argument("kind", choices=GENERATE_KINDS)
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("fuzz", help="generate, solve and verify many instances")
    s.add_argument("regime", choices=list(REGIME_FLAGS))
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("export-dot", help="print Graphviz text")
    s.add_argument("instance")
    s.add_argument("colouring", nargs="?")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, ContractError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CapacityError as exc:
        err.write(f"capacity: {exc}\n")
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        err.write(f"internal: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
