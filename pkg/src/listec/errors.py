"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the split matters:
input problems are the caller's fault, invariant violations are ours.
"""


class ListecError(Exception):
    """Base class."""


class InputError(ListecError, ValueError):
    """Malformed input, or an instance that does not meet its regime bound."""


class ContractError(ListecError, ValueError):
    """A routine was called outside its documented precondition."""


class CapacityError(ListecError):
    """An exhaustive routine refused an instance above its size guard."""


class InvariantViolation(ListecError, AssertionError):
    """Something that the underlying theory rules out happened anyway."""


class GreedyFailure(ListecError):
    """Semi-greedy colouring ran out of colours on ``edge``."""

    def __init__(self, edge, message=None):
        self.edge = edge
        super().__init__(message or f"no colour left for edge {edge[0]}-{edge[1]}")


class NotChoosable(ListecError):
    """A bipartite input has the one shape that is not side-choosable.

    ``mapping`` sends the reference shape's vertices onto the input graph.
    """

    def __init__(self, mapping, message="graph is the non-choosable exception"):
        self.mapping = mapping
        super().__init__(message)
