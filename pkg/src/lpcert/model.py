"""Mixed-form LP data model: ``min c^T x  s.t.  A_E x = b_E,  A_I x >= b_I``.

Constraint indices are 1-based and follow the stacked order: equalities are
``1..m_E`` and inequalities ``m_E+1..m_E+m_I``.

The query functions here (:func:`active_set`, :func:`max_feasible_step`)
only touch a problem through ``A_E, b_E, A_I, b_I, c`` and the helpers
below, so they also accept a perturbed problem whose inequality
right-hand sides are LexValues, together with LexValue points.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NotFeasible,
    NotFeasibleDirection,
    ParseError,
    ZeroDirection,
)
from .exact_arith import format_rational, parse_rational
from .linalg import Matrix, dot, vector

log = logging.getLogger("lpcert")


@dataclass(frozen=True)
class MixedLP:
    A_E: Matrix
    b_E: tuple
    A_I: Matrix
    b_I: tuple
    c: tuple

    def __post_init__(self) -> None:
        n = len(self.c)
        if self.A_E.ncols != n or self.A_I.ncols != n:
            raise DimensionMismatch(
                f"constraint matrices have {self.A_E.ncols}/{self.A_I.ncols} columns, c has {n}"
            )
        if len(self.b_E) != self.A_E.nrows or len(self.b_I) != self.A_I.nrows:
            raise DimensionMismatch("right-hand side lengths do not match row counts")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m_E(self) -> int:
        return self.A_E.nrows

    @property
    def m_I(self) -> int:
        return self.A_I.nrows

    @property
    def m(self) -> int:
        return self.A_E.nrows + self.A_I.nrows

    @property
    def A(self) -> Matrix:
        return self.A_E.stack(self.A_I)

    @property
    def b(self) -> tuple:
        return tuple(self.b_E) + tuple(self.b_I)

    def objective(self, x: Sequence):
        return dot(self.c, x)

    def with_rhs(self, b_E=None, b_I=None) -> MixedLP:
        return MixedLP(self.A_E, self.b_E if b_E is None else tuple(b_E),
                       self.A_I, self.b_I if b_I is None else tuple(b_I), self.c)


def make_lp(c, A_I=(), b_I=(), A_E=(), b_E=()) -> MixedLP:
    """Build a MixedLP from nested lists of numbers or rational strings."""
    conv = lambda seq: vector(parse_rational(v) if isinstance(v, str) else v for v in seq)
    c = conv(c)
    n = len(c)
    return MixedLP(
        Matrix((conv(r) for r in A_E), n), conv(b_E),
        Matrix((conv(r) for r in A_I), n), conv(b_I), c,
    )


# -- generic constraint access (works for MixedLP and PerturbedLP) ---------

def num_constraints(lp) -> int:
    return lp.A_E.nrows + lp.A_I.nrows


def constraint_row(lp, i: int) -> tuple:
    m_E = lp.A_E.nrows
    return lp.A_E[i - 1] if i <= m_E else lp.A_I[i - m_E - 1]


def constraint_rhs(lp, i: int):
    m_E = lp.A_E.nrows
    return lp.b_E[i - 1] if i <= m_E else lp.b_I[i - m_E - 1]


def is_equality(lp, i: int) -> bool:
    return i <= lp.A_E.nrows


def residual(lp, i: int, x: Sequence):
    """``a_i^T x - b_i``."""
    return dot(constraint_row(lp, i), x) - constraint_rhs(lp, i)


def rows_matrix(lp, indices: Iterable[int]) -> Matrix:
    return Matrix((constraint_row(lp, i) for i in indices), lp.A_E.ncols)


def first_violation(lp, x: Sequence):
    """``(index, residual)`` of the first violated constraint, or None."""
    if len(x) != lp.A_E.ncols:
        raise DimensionMismatch(f"point has {len(x)} coordinates, LP has {lp.A_E.ncols}")
    m_E = lp.A_E.nrows
    for i in range(1, num_constraints(lp) + 1):
        r = residual(lp, i, x)
        if (i <= m_E and r != 0) or r < 0:
            return i, r
    return None


def is_feasible(lp, x: Sequence) -> bool:
    return first_violation(lp, x) is None


def check_feasible(lp, x: Sequence) -> None:
    bad = first_violation(lp, x)
    if bad is not None:
        raise NotFeasible(*bad)


# -- active sets and steps --------------------------------------------------

@dataclass(frozen=True)
class ActiveSet:
    at: tuple
    eq_indices: tuple[int, ...]
    active_ineq: tuple[int, ...]
    inactive_ineq: tuple[int, ...]
    matrix: Matrix

    @property
    def indices(self) -> tuple[int, ...]:
        return self.eq_indices + self.active_ineq


def active_set(lp, x: Sequence) -> ActiveSet:
    check_feasible(lp, x)
    m_E = lp.A_E.nrows
    active, inactive = [], []
    for i in range(m_E + 1, num_constraints(lp) + 1):
        (active if residual(lp, i, x) == 0 else inactive).append(i)
    eq = tuple(range(1, m_E + 1))
    return ActiveSet(tuple(x), eq, tuple(active), tuple(inactive),
                     rows_matrix(lp, eq + tuple(active)))


def is_feasible_direction(aset: ActiveSet, p: Sequence) -> bool:
    if not any(p):
        raise ZeroDirection("direction is the zero vector")
    m_E = len(aset.eq_indices)
    for k, row in enumerate(aset.matrix.rows):
        v = dot(row, p)
        if (k < m_E and v != 0) or v < 0:
            return False
    return True


@dataclass(frozen=True)
class StepResult:
    sigma_hat: object  # Fraction, LexValue, or math.inf
    blocking: tuple[int, ...] = field(default=())

    @property
    def finite(self) -> bool:
        return self.sigma_hat is not math.inf


def max_feasible_step(lp, aset: ActiveSet, p: Sequence) -> StepResult:
    """Largest step along ``p`` that keeps every constraint satisfied."""
    if not is_feasible_direction(aset, p):
        raise NotFeasibleDirection("p is not a feasible direction at this point")
    best = math.inf
    blocking: list[int] = []
    for i in aset.inactive_ineq:
        slope = dot(constraint_row(lp, i), p)
        if slope >= 0:
            continue
        sigma = residual(lp, i, aset.at) / (-slope)
        if best is math.inf or sigma < best:
            best, blocking = sigma, [i]
        elif sigma == best:
            blocking.append(i)
    return StepResult(best, tuple(blocking))


# -- LP text format ---------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _rationals(tokens, lineno: int) -> list[Fraction]:
    out = []
    for tok in tokens:
        try:
            out.append(parse_rational(tok.group()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {tok.group()!r}", lineno, tok.start() + 1) from None
    return out


def parse_lp(text: str | bytes) -> MixedLP:
    """Parse the line-oriented LP format (``vars``/``min``/``eq``/``ge`` lines)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    c = None
    eq_rows, eq_rhs, ge_rows, ge_rhs = [], [], [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_TOKEN.finditer(line))
        key = toks[0].group()
        if key == "vars":
            if n is not None:
                raise ParseError("duplicate 'vars' header", lineno, toks[0].start() + 1)
            if len(toks) != 2 or not toks[1].group().isdigit() or int(toks[1].group()) < 1:
                raise ParseError("expected 'vars <n>' with n >= 1", lineno, toks[0].start() + 1)
            n = int(toks[1].group())
            continue
        if n is None:
            raise ParseError("'vars <n>' must come first", lineno, toks[0].start() + 1)
        if key == "min":
            if c is not None:
                raise ParseError("duplicate objective", lineno, toks[0].start() + 1)
            c = _rationals(toks[1:], lineno)
            if len(c) != n:
                raise DimensionMismatch(f"line {lineno}: objective has {len(c)} entries, expected {n}")
        elif key in ("eq", "ge"):
            op = "=" if key == "eq" else ">="
            ops = [k for k, t in enumerate(toks) if t.group() in ("=", ">=", "<=")]
            if len(ops) != 1 or toks[ops[0]].group() != op:
                raise ParseError(f"'{key}' row needs exactly one '{op}'", lineno, toks[0].start() + 1)
            k = ops[0]
            if len(toks) != k + 2:
                raise ParseError("expected a single right-hand side", lineno, toks[k].start() + 1)
            coeffs = _rationals(toks[1:k], lineno)
            rhs = _rationals(toks[k + 1:], lineno)[0]
            if len(coeffs) != n:
                raise DimensionMismatch(f"line {lineno}: '{key}' row has {len(coeffs)} coefficients, expected {n}")
            if key == "eq":
                if ge_rows:
                    raise ParseError("equalities must precede inequalities", lineno, toks[0].start() + 1)
                eq_rows.append(coeffs)
                eq_rhs.append(rhs)
            else:
                ge_rows.append(coeffs)
                ge_rhs.append(rhs)
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, toks[0].start() + 1)
    if n is None:
        raise ParseError("missing 'vars' header", 1)
    if c is None:
        raise ParseError("missing 'min' objective", 1)
    lp = MixedLP(Matrix(eq_rows, n), tuple(eq_rhs), Matrix(ge_rows, n), tuple(ge_rhs), tuple(c))
    if not any(lp.c):
        log.warning("objective vector is zero")
    if lp.A.is_zero():
        log.warning("constraint matrix is zero")
    return lp


def format_lp(lp: MixedLP) -> str:
    fmt = lambda seq: " ".join(format_rational(v) for v in seq)
    lines = [f"vars {lp.n}", f"min {fmt(lp.c)}"]
    lines += [f"eq {fmt(r)} = {format_rational(b)}" for r, b in zip(lp.A_E, lp.b_E)]
    lines += [f"ge {fmt(r)} >= {format_rational(b)}" for r, b in zip(lp.A_I, lp.b_I)]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str | bytes) -> Matrix:
    """``rows r cols n`` header followed by ``r`` lines of ``n`` rationals."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    shape = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_TOKEN.finditer(line))
        if shape is None:
            words = [t.group() for t in toks]
            if len(words) != 4 or words[0] != "rows" or words[2] != "cols" \
                    or not words[1].isdigit() or not words[3].isdigit():
                raise ParseError("expected header 'rows <r> cols <n>'", lineno, toks[0].start() + 1)
            shape = (int(words[1]), int(words[3]))
            continue
        row = _rationals(toks, lineno)
        if len(row) != shape[1]:
            raise DimensionMismatch(f"line {lineno}: row has {len(row)} entries, expected {shape[1]}")
        rows.append(row)
    if shape is None:
        raise ParseError("missing 'rows <r> cols <n>' header", 1)
    if len(rows) != shape[0]:
        raise DimensionMismatch(f"matrix has {len(rows)} rows, header says {shape[0]}")
    return Matrix(rows, shape[1])


def parse_vector(text: str | bytes) -> tuple[Fraction, ...]:
    """Whitespace- or comma-separated rationals; ``#`` lines are comments."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith("#"):
            continue
        values += _rationals(re.finditer(r"[^\s,]+", line), lineno)
    return tuple(values)
