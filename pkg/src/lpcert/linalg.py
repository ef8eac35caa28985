"""Dense exact linear algebra over the rationals.

Pivoting is deterministic everywhere: within a column the lowest row with a
nonzero entry is used, and columns are scanned left to right.  Row
positions in this module are 0-based; constraint labels (1-based) live in
:mod:`lpcert.model`.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import ContractViolation, DimensionMismatch, SingularMatrix

Vector = tuple  # tuple of Fraction (or LexValue where noted)


def vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def dot(row: Sequence, x: Sequence):
    """Inner product; ``x`` may hold LexValues, ``row`` is rational."""
    total = Fraction(0)
    for a, xi in zip(row, x):
        if a:
            total = total + a * xi
    return total


class Matrix:
    """Immutable row-major rational matrix with an explicit column count."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None) -> None:
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {ncols}")
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def transpose(self) -> Matrix:
        return Matrix((tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.nrows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def take(self, indices: Iterable[int]) -> Matrix:
        return Matrix((self.rows[i] for i in indices), self.ncols)

    def stack(self, other: Matrix) -> Matrix:
        if other.ncols != self.ncols:
            raise DimensionMismatch(f"cannot stack {self.ncols} and {other.ncols} columns")
        return Matrix(self.rows + other.rows, self.ncols)

    def matvec(self, x: Sequence) -> tuple:
        if len(x) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.ncols} columns")
        return tuple(dot(r, x) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


def _integer_rows(M: Matrix) -> list[list[int]]:
    out = []
    for r in M.rows:
        scale = lcm(*(a.denominator for a in r)) if r else 1
        out.append([int(a * scale) for a in r])
    return out


def rank(M: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    a = _integer_rows(M)
    nrows, ncols = M.nrows, M.ncols
    prev = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col]
            row_i = a[i]
            row_r = a[r]
            for j in range(col, ncols):
                q, rem = divmod(p * row_i[j] - f * row_r[j], prev)
                if rem:
                    raise ContractViolation("Bareiss division was not exact")
                row_i[j] = q
        prev = p
        r += 1
    return r


def _rref(rows: Sequence[Sequence], ncols: int, rhs: Sequence | None = None):
    """Reduced row echelon form with exact Fractions.

    Returns ``(rows, rhs, pivot_cols)``.  ``rhs`` entries may be any values
    closed under subtraction and rational scaling (e.g. LexValue).
    """
    a = [list(r) for r in rows]
    b = list(rhs) if rhs is not None else None
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if b is not None:
            b[r], b[piv] = b[piv], b[r]
        p = a[r][col]
        if p != 1:
            a[r] = [v / p for v in a[r]]
            if b is not None:
                b[r] = b[r] / p
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
                if b is not None:
                    b[i] = b[i] - f * b[r]
        pivots.append(col)
        r += 1
    return a, b, pivots


def solve_square(M: Matrix, rhs: Sequence) -> tuple:
    """Unique solution of ``M x = rhs`` for square nonsingular ``M``.

    ``rhs`` may contain LexValues; the solution then does too.
    """
    n = M.nrows
    if M.ncols != n:
        raise DimensionMismatch(f"solve_square needs a square matrix, got {M.shape}")
    if len(rhs) != n:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, expected {n}")
    _, b, pivots = _rref(M.rows, n, rhs)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    return tuple(b)


def nullspace_vector(M: Matrix) -> tuple[Fraction, ...] | None:
    """A nonzero ``p`` with ``M p = 0``, or None when ``M`` has full column rank.

    The free column of lowest index is set to 1, the other free columns to 0,
    and pivot variables are back-solved.
    """
    a, _, pivots = _rref(M.rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    if not free:
        return None
    f = free[0]
    p = [Fraction(0)] * M.ncols
    p[f] = Fraction(1)
    for row, col in zip(a, pivots):
        p[col] = -row[f]
    return tuple(p)


def independent_rows(M: Matrix, start: Iterable[int] = ()) -> list[int]:
    """Greedy lowest-index maximal independent row set, seeded with ``start``.

    The seed rows are assumed independent; the remaining rows are scanned in
    order and kept when they raise the rank.
    """
    chosen = list(start)
    basis = [list(M.rows[i]) for i in chosen]
    # Echelonised copy of the chosen rows, used for membership tests.
    echelon, _, piv = _rref(basis, M.ncols)
    echelon = echelon[: len(piv)]
    if len(piv) != len(chosen):
        raise ContractViolation("seed rows are not linearly independent")
    for i in range(M.nrows):
        if i in chosen:
            continue
        if len(piv) == M.ncols:
            break
        v = list(M.rows[i])
        for row, col in zip(echelon, piv):
            if v[col]:
                f = v[col]
                v = [vi - f * ri for vi, ri in zip(v, row)]
        if any(v):
            chosen.append(i)
            echelon, _, piv = _rref(echelon + [v], M.ncols)
            echelon = echelon[: len(piv)]
    return chosen


def independent_row_outside(D: Matrix, sub: Iterable[int], p: Sequence) -> int:
    """Smallest row index ``j`` not in ``sub`` with ``d_j^T p != 0``.

    If the rows in ``sub`` annihilate ``p`` and ``D`` has full column rank,
    such a row exists and is linearly independent of the ``sub`` rows.
    """
    sub = set(sub)
    for j, row in enumerate(D.rows):
        if j not in sub and dot(row, p) != 0:
            return j
    raise ContractViolation("no row outside the subset has a nonzero product with p")


def particular_solution(M: Matrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Some solution of ``M x = rhs`` (free variables zero), or None if inconsistent."""
    a, b, pivots = _rref(M.rows, M.ncols, rhs)
    for i in range(len(pivots), len(a)):
        if b[i] != 0:
            return None
    x = [Fraction(0)] * M.ncols
    for i, col in enumerate(pivots):
        x[col] = b[i]
    return tuple(x)
