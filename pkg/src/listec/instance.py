"""Line-oriented text files for instances, decompositions and colourings.

An instance looks like::

    listec-instance 1
    regime tw3
    vertices 0 1 2 3
    list 0-1: 1 2 3
    decomposition path
    bag 0: 0 1 2
    tree-edge 0-1

Blank lines and ``#`` comments are ignored.  Edges are the keys of the
``list`` lines.  Unknown line kinds are rejected.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from .decomp import TreeDecomposition
from .errors import InputError
from .graph import Colouring, Graph, Lists, ekey

INSTANCE_HEADER = "listec-instance 1"
DECOMP_HEADER = "listec-decomposition 1"
COLOURING_HEADER = "listec-colouring 1"


@dataclass
class Instance:
    graph: Graph
    lists: Lists
    regime: Optional[str] = None
    decomposition: Optional[TreeDecomposition] = None

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.graph == other.graph and dict(self.lists) == dict(other.lists)
                and self.regime == other.regime and _same_decomp(self.decomposition, other.decomposition))


def _same_decomp(a, b):
    if a is None or b is None:
        return a is b
    return a.bags == b.bags and a.tree_edges == b.tree_edges and a.shape == b.shape


def edge_name(e) -> str:
    a, b = ekey(*e)
    return f"{a}-{b}"


def _int(tok, where):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{where}: expected an integer, got {tok!r}") from None


def _parse_edge(tok, where):
    parts = tok.split("-")
    if len(parts) != 2:
        raise InputError(f"{where}: bad edge key {tok!r}")
    a, b = (_int(p, where) for p in parts)
    if a == b:
        raise InputError(f"{where}: loop at vertex {a}")
    return ekey(a, b)


def _split_colon(rest, where):
    if ":" not in rest:
        raise InputError(f"{where}: missing ':'")
    head, tail = rest.split(":", 1)
    return head.strip(), tail.split()


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


class _DecompParts:
    def __init__(self):
        self.shape = None
        self.bags: Dict[int, List[int]] = {}
        self.tree_edges = []

    def take(self, kind, rest, where) -> bool:
        if kind == "decomposition":
            if rest not in ("path", "tree"):
                raise InputError(f"{where}: decomposition shape must be path or tree")
            if self.shape is not None:
                raise InputError(f"{where}: decomposition given twice")
            self.shape = rest
        elif kind == "bag":
            head, toks = _split_colon(rest, where)
            t = _int(head, where)
            if t in self.bags:
                raise InputError(f"{where}: bag {t} given twice")
            self.bags[t] = [_int(x, where) for x in toks]
        elif kind == "tree-edge":
            self.tree_edges.append(_parse_edge(rest, where))
        else:
            return False
        return True

    def build(self) -> Optional[TreeDecomposition]:
        if self.shape is None:
            if self.bags or self.tree_edges:
                raise InputError("bags given without a 'decomposition' line")
            return None
        for a, b in self.tree_edges:
            if a not in self.bags or b not in self.bags:
                raise InputError(f"tree edge {a}-{b} names an unknown bag")
        return TreeDecomposition(self.bags, tuple(self.tree_edges), self.shape)


def _header(lines, want, name):
    try:
        no, first = next(lines)
    except StopIteration:
        raise InputError(f"empty {name} file") from None
    if first != want:
        raise InputError(f"line {no}: expected header {want!r}")


def parse_instance(text: str) -> Instance:
    lines = _lines(text)
    _header(lines, INSTANCE_HEADER, "instance")
    vertices, lists, regime = [], {}, None
    dec = _DecompParts()
    for no, line in lines:
        where = f"line {no}"
        kind, _, rest = line.partition(" ")
        rest = rest.strip()
        if kind == "regime":
            regime = rest
        elif kind == "vertices":
            vertices += [_int(x, where) for x in rest.split()]
        elif kind == "list":
            head, toks = _split_colon(rest, where)
            e = _parse_edge(head, where)
            if e in lists:
                raise InputError(f"{where}: edge {edge_name(e)} listed twice")
            lists[e] = frozenset(_int(x, where) for x in toks)
        elif not dec.take(kind, rest, where):
            raise InputError(f"{where}: unknown field {kind!r}")
    if len(set(vertices)) != len(vertices):
        raise InputError("duplicate vertex ids")
    g = Graph(vertices, lists)
    return Instance(g, lists, regime, dec.build())


def parse_decomposition(text: str) -> TreeDecomposition:
    lines = _lines(text)
    _header(lines, DECOMP_HEADER, "decomposition")
    dec = _DecompParts()
    for no, line in lines:
        kind, _, rest = line.partition(" ")
        if not dec.take(kind, rest.strip(), f"line {no}"):
            raise InputError(f"line {no}: unknown field {kind!r}")
    d = dec.build()
    if d is None:
        raise InputError("decomposition file has no 'decomposition' line")
    return d


def parse_colouring(text: str) -> Colouring:
    """``u-v: c`` lines; the header line is optional."""
    out = {}
    for no, line in _lines(text):
        if line == COLOURING_HEADER:
            continue
        head, toks = _split_colon(line, f"line {no}")
        if len(toks) != 1:
            raise InputError(f"line {no}: expected one colour")
        out[_parse_edge(head, f"line {no}")] = _int(toks[0], f"line {no}")
    return out


def _decomp_lines(d: TreeDecomposition) -> Iterable[str]:
    yield f"decomposition {d.shape}"
    for t in d.nodes:
        yield f"bag {t}: " + " ".join(map(str, d.bags[t]))
    for a, b in d.tree_edges:
        yield f"tree-edge {a}-{b}"


def emit_instance(inst: Instance) -> str:
    out = [INSTANCE_HEADER]
    if inst.regime:
        out.append(f"regime {inst.regime}")
    out.append("vertices " + " ".join(map(str, inst.graph.vertices)))
    for e in inst.graph.edges:
        out.append(f"list {edge_name(e)}: " + " ".join(map(str, sorted(inst.lists[e]))))
    if inst.decomposition is not None:
        out += list(_decomp_lines(inst.decomposition))
    return "\n".join(out) + "\n"


def emit_decomposition(d: TreeDecomposition) -> str:
    return "\n".join([DECOMP_HEADER, *_decomp_lines(d)]) + "\n"


def emit_colouring(col: Colouring) -> str:
    return "".join(f"{edge_name(e)}: {col[e]}\n" for e in sorted(col))


def to_dot(g: Graph, col: Optional[Colouring] = None) -> str:
    """Graphviz text; coloured edges are labelled, uncoloured ones dashed."""
    col = col or {}
    out = ["graph listec {"]
    for v in g.vertices:
        out.append(f"  {v};")
    for a, b in g.edges:
        c = col.get((a, b))
        style = f'[label="{c}"]' if c is not None else "[style=dashed]"
        out.append(f"  {a} -- {b} {style};")
    out.append("}")
    return "\n".join(out) + "\n"
