"""Constructive list edge-colouring for graphs of tree-width 3 and path-width at most 4."""
from .decomp import TreeDecomposition, decompose_pw, decompose_tw3, validate
from .errors import (CapacityError, ContractError, GreedyFailure, InputError, InvariantViolation,
                     ListecError, NotChoosable)
from .graph import Graph, ekey
from .instance import Instance, emit_instance, parse_instance
from .oracle import chromatic_index, exists_colouring, verify_colouring
from .solver import PW3_L6, PW4_L10, THREE_TREE, TW3_L7, SolveRequest, SolveTrace, solve, solve_graph

__version__ = "0.1.0"

__all__ = [
    "Graph", "ekey", "TreeDecomposition", "decompose_tw3", "decompose_pw", "validate",
    "solve", "solve_graph", "SolveRequest", "SolveTrace", "TW3_L7", "PW3_L6", "PW4_L10", "THREE_TREE",
    "chromatic_index", "exists_colouring", "verify_colouring", "Instance", "parse_instance",
    "emit_instance", "ListecError", "InputError", "ContractError", "CapacityError",
    "InvariantViolation", "GreedyFailure", "NotChoosable",
]
