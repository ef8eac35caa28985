"""Exception hierarchy shared by every lpcert module."""

from __future__ import annotations


class LPError(Exception):
    """Base class for all lpcert errors."""


class ParseError(LPError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DimensionMismatch(LPError):
    pass


class SingularMatrix(LPError):
    pass


class RankDeficient(LPError):
    pass


class NotFeasible(LPError):
    """A point violates a constraint.

    ``index`` is the 1-based constraint index of the first violation and
    ``residual`` is ``a_i^T x - b_i`` there.
    """

    def __init__(self, index: int, residual) -> None:
        super().__init__(f"constraint {index} violated (residual {residual})")
        self.index = index
        self.residual = residual


class ZeroDirection(LPError):
    pass


class NotFeasibleDirection(LPError):
    pass


class NotDualFeasible(LPError):
    def __init__(self, condition: str, detail: str = "") -> None:
        super().__init__(f"{condition} fails" + (f": {detail}" if detail else ""))
        self.condition = condition


class NotNondegenerate(LPError):
    pass


class NotOptimalVertex(LPError):
    pass


class NotTwoDimensional(LPError):
    pass


class CapExceeded(LPError):
    def __init__(self, subsets: int, cap: int) -> None:
        super().__init__(f"{subsets} subsets exceed the enumeration cap {cap}")
        self.subsets = subsets
        self.cap = cap


class ContractViolation(LPError):
    """Raised when an internal postcondition fails; always a bug."""
