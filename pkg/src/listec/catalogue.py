"""The small 3-trees that the solver colours by a direct script."""
from .graph import Graph

_K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
_B = _K4 + [(1, 5), (2, 5), (3, 5)]
_C = _B + [(1, 6), (3, 6), (2, 6)]
_D = _B + [(1, 6), (3, 6), (4, 6)]
_G = _D + [(2, 7), (3, 7), (4, 7)]

CATALOGUE_EDGES = {
    "a": _K4,
    "b": _B,
    "c": _C,
    "d": _D,
    "e": _C + [(1, 7), (3, 7), (4, 7)],
    "f": _C + [(1, 7), (2, 7), (3, 7)],
    "g": _G,
    "h": _G + [(1, 8), (6, 8), (4, 8)],
    "i": _G + [(1, 8), (2, 8), (4, 8)],
}

CATALOGUE = {k: Graph((), v) for k, v in CATALOGUE_EDGES.items()}

# list sizes used by the solver: the chromatic index of each entry
CHROMATIC_INDEX = {"a": 3, "b": 5, "c": 5, "d": 5, "e": 6, "f": 6, "g": 6, "h": 6, "i": 6}
