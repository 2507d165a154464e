"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "HyperkeyError",
    "UnknownVertex",
    "EmptyVertexSet",
    "EmptyResult",
    "InvalidPartition",
    "GroundTooLarge",
    "Disconnected",
    "NotCycleFree",
    "SemiLatticeViolation",
    "NotMCH",
    "NegativeRate",
    "SubsetTooLarge",
    "SubsetOutsideBlock",
    "NotFundamentalBlock",
    "VertexNotInBlock",
    "RankDefect",
    "SchemeUnverified",
    "WeightsNotConvex",
    "KeyRateExceedsCapacity",
    "StateSpaceTooLarge",
    "GenerationBudgetExhausted",
    "NonpositiveWeight",
    "ParseError",
    "DuplicateEdgeId",
]


class HyperkeyError(Exception):
    """Base class for every domain error raised by this package."""


class UnknownVertex(HyperkeyError):
    """A vertex id was used that is not part of the hypergraph."""


class EmptyVertexSet(HyperkeyError):
    """An operation that needs a nonempty vertex set received an empty one."""


class EmptyResult(HyperkeyError):
    """An operation would have produced a hypergraph with no vertices."""


class InvalidPartition(HyperkeyError):
    """Blocks do not form a partition of the expected ground set."""


class GroundTooLarge(HyperkeyError):
    """Explicit enumeration was requested over a ground set above the cap."""


class Disconnected(HyperkeyError):
    """The hypergraph (or a required restriction of it) is not connected."""


class NotCycleFree(HyperkeyError):
    """A cycle-free structure was required but a cycle exists."""


class SemiLatticeViolation(HyperkeyError):
    """Internal consistency failure: the minimizer set is not meet-closed.

    This is never expected on valid inputs; it exists so the finest-minimizer
    selection fails loudly instead of guessing.
    """


class NotMCH(HyperkeyError):
    """The hypergraph is not minimally connected."""


class NegativeRate(HyperkeyError):
    """A rate that must be nonnegative was negative."""


class SubsetTooLarge(HyperkeyError):
    """A vertex subset exceeds the size limit of the requested bound."""


class SubsetOutsideBlock(HyperkeyError):
    """A subset argument is not contained in the rank function's block."""


class NotFundamentalBlock(HyperkeyError):
    """The given set is not a block of the fundamental partition."""


class VertexNotInBlock(HyperkeyError):
    """The given vertex does not belong to the given block."""


class RankDefect(HyperkeyError):
    """An internally synthesized matrix failed its rank invariant."""


class SchemeUnverified(HyperkeyError):
    """A scheme failed verification where a verified scheme is required."""


class WeightsNotConvex(HyperkeyError):
    """Time-sharing weights are not positive rationals summing to one."""


class KeyRateExceedsCapacity(HyperkeyError):
    """The requested key rate exceeds the unconstrained capacity."""


class StateSpaceTooLarge(HyperkeyError):
    """Exhaustive enumeration would exceed the state-space cap."""


class GenerationBudgetExhausted(HyperkeyError):
    """Rejection sampling used up its attempt budget without success."""


class NonpositiveWeight(HyperkeyError):
    """Edge weights must be strictly positive rationals."""


class ParseError(HyperkeyError):
    """A document could not be parsed; carries a 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DuplicateEdgeId(ParseError):
    """Two edge statements reuse the same id."""
