#!/usr/bin/env python3
"""
Exception hierarchy shared by the analysis modules.

Everything derives from ValueError so that callers which only care about
"bad input" can catch a single type.
"""


class ResolutionGraphError(ValueError):
    """Base class for all resgraph errors."""


class GraphError(ResolutionGraphError):
    """A graph violates one of its structural invariants."""


class DimensionMismatch(ResolutionGraphError):
    """Vectors or matrices of incompatible sizes were combined."""


class HypothesisViolation(ResolutionGraphError):
    """A matrix is not symmetric, or has a positive off-diagonal entry where non-positive ones are required."""


class NotContractible(ResolutionGraphError):
    """The intersection matrix is not negative definite."""


class Disconnected(ResolutionGraphError):
    """The dual graph (or the support of a cycle) is not connected."""


class ParityViolation(ResolutionGraphError):
    """Z·Z + Z·K is odd, so the graph data is inconsistent."""


class BoxTooLarge(ResolutionGraphError):
    """An exhaustive cycle enumeration would exceed the configured bound."""

    def __init__(self, size: int, bound: int):
        super().__init__(f"Enumeration box of size {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound


class PreconditionViolation(ResolutionGraphError):
    """An operation was called on input outside its domain."""


class UnknownCurve(ResolutionGraphError):
    """A blowup instruction references a curve that does not exist."""


class NotIntersecting(ResolutionGraphError):
    """blowup_at was asked to blow up a point on two disjoint curves."""


class ScriptError(ResolutionGraphError):
    """A blowup script instruction failed; carries its 1-based index."""

    def __init__(self, index: int, message: str):
        super().__init__(f"instruction {index}: {message}")
        self.index = index


class ParseError(ResolutionGraphError):
    """Malformed graph or script text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
