"""Farkas' lemma decided by one bounded LP.

For ``A`` (m x n) and ``c``, either some ``y >= 0`` has ``A^T y = c``
(the *combination* case) or some ``p`` has ``A p >= 0`` and ``c^T p < 0``
(the *separation* case), never both.  Minimising ``c^T p`` over
``A p >= 0, -1 <= p <= 1`` settles which: the box gives full column rank
and boundedness, ``p = 0`` is feasible, and the optimal multiplier splits
into the combination ``y`` plus the two box blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import Optimal, solve
from .errors import ContractViolation, DimensionMismatch
from .linalg import Matrix, dot, vector
from .model import MixedLP


@dataclass(frozen=True)
class Combination:
    y: tuple
    case = 1

    @property
    def witness(self) -> tuple:
        return self.y


@dataclass(frozen=True)
class Separation:
    p: tuple
    case = 2

    @property
    def witness(self) -> tuple:
        return self.p


def box_lp(A: Matrix, c: Sequence) -> MixedLP:
    n = A.ncols
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    rows = list(A.rows) + eye + [[-v for v in r] for r in eye]
    rhs = (Fraction(0),) * A.nrows + (Fraction(-1),) * (2 * n)
    return MixedLP(Matrix([], n), (), Matrix(rows, n), rhs, vector(c))


def verify_combination(A: Matrix, c: Sequence, y: Sequence) -> bool:
    return (len(y) == A.nrows and all(v >= 0 for v in y)
            and A.transpose().matvec(y) == tuple(vector(c)))


def verify_separation(A: Matrix, c: Sequence, p: Sequence) -> bool:
    return all(v >= 0 for v in A.matvec(p)) and dot(vector(c), p) < 0


def farkas(A: Matrix, c: Sequence) -> Combination | Separation:
    if len(c) != A.ncols:
        raise DimensionMismatch(f"c has {len(c)} entries, A has {A.ncols} columns")
    lp = box_lp(A, c)
    out = solve(lp, start=(0,) * A.ncols)
    if not isinstance(out, Optimal):
        raise ContractViolation(f"box LP returned {out.status}")
    m = A.nrows
    if out.objective == 0:
        lam = out.lam
        if any(lam[m:]):
            raise ContractViolation("box multipliers are nonzero at optimal value 0")
        result = Combination(lam[:m])
        ok = verify_combination(A, c, result.y)
    elif out.objective < 0:
        result = Separation(out.x_star)
        ok = verify_separation(A, c, result.p)
    else:
        raise ContractViolation("box LP optimum is positive although p = 0 is feasible")
    if not ok:
        raise ContractViolation("Farkas witness fails verification")
    return result
