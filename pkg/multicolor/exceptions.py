"""Exception hierarchy shared by the engine, the harness and the service."""
from typing import Optional, Sequence


class MulticolorError(Exception):
    """Base class for all multicolor errors."""


class InvalidGraphError(MulticolorError, ValueError):
    """Malformed multigraph input (loops, bad vertices, bad documents)."""


class ExhaustiveLimitError(MulticolorError):
    """An exhaustive routine was asked to work beyond its configured bound."""

    def __init__(self, message: str, limit: int, actual: int) -> None:
        super().__init__(message)
        self.limit = limit
        self.actual = actual


class ColoringStructureError(MulticolorError, ValueError):
    """A colouring refers to instances or colours that do not exist, or is improper."""


class PreconditionUnmet(MulticolorError):
    """A checked strategy precondition does not hold."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class NotBoundedError(PreconditionUnmet):
    """The multigraph is not (k, t)-bounded."""

    def __init__(self, reason: str, offending: Sequence[int]) -> None:
        super().__init__(reason)
        self.offending = tuple(offending)


class IllegalTupleError(PreconditionUnmet):
    """(G, k, e0, phi, T) violates one of the legal 5-tuple conditions."""


class NotElementaryError(PreconditionUnmet):
    """Augmentation was requested for a tree that is in fact elementary."""


class BudgetExhausted(MulticolorError):
    """Kempe switching ran out of budget before the root edge became colourable."""

    def __init__(self, message: str, switches: int, k: int, root: Optional[object] = None) -> None:
        super().__init__(message)
        self.switches = switches
        self.k = k
        self.root = root


class FanStuck(MulticolorError):
    """A Vizing fan could neither fold, reduce nor grow."""


class HarnessError(MulticolorError, ValueError):
    """Invalid experiment configuration, aggregation input or output format."""
