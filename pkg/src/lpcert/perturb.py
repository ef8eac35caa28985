"""Symbolically perturbed LP and its nondegenerate optimal vertex.

Inequality ``k`` (counting inequalities from 1) gets right-hand side
``b_k - eps**order[k]``; equalities are left alone.  All arithmetic is done
on LexValues, so "for all sufficiently small eps" is decided exactly.

Because each perturbed inequality carries its own power of eps, no vertex
of the perturbed problem has more than ``n`` active constraints.  That
makes the simple pivot rule in :func:`solve_perturbed` (drop a working
inequality with a negative multiplier, walk to the unique blocking
constraint) strictly improving, so it terminates without any anti-cycling
device.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolation, DimensionMismatch, RankDeficient
from .exact_arith import LexValue, constant_part
from .linalg import Matrix, dot, rank, solve_square
from .model import (
    MixedLP,
    active_set,
    check_feasible,
    constraint_rhs,
    constraint_row,
    is_feasible,
    rows_matrix,
)
from .vertex import descend_to_vertex, verify_ray


@dataclass(frozen=True)
class PerturbedLP:
    base: MixedLP
    b_I: tuple  # LexValues
    exponents: tuple[int, ...]  # power of eps carried by each inequality

    @property
    def A_E(self) -> Matrix:
        return self.base.A_E

    @property
    def b_E(self) -> tuple:
        return self.base.b_E

    @property
    def A_I(self) -> Matrix:
        return self.base.A_I

    @property
    def c(self) -> tuple:
        return self.base.c

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m_E(self) -> int:
        return self.base.m_E

    @property
    def m_I(self) -> int:
        return self.base.m_I

    @property
    def lex_length(self) -> int:
        return self.base.m_I + 1

    def lift(self, value) -> LexValue:
        if isinstance(value, LexValue):
            return value
        return LexValue.constant(value, self.lex_length)


def perturb(lp: MixedLP, order: Sequence[int] | None = None) -> PerturbedLP:
    """Subtract ``eps**order[k]`` from the k-th inequality right-hand side."""
    m_I = lp.m_I
    order = tuple(range(1, m_I + 1)) if order is None else tuple(int(k) for k in order)
    if sorted(order) != list(range(1, m_I + 1)):
        raise ValueError(f"epsilon order {order} is not a permutation of 1..{m_I}")
    length = m_I + 1
    rhs = tuple(
        LexValue.constant(b, length) - LexValue.monomial(k, 1, length)
        for b, k in zip(lp.b_I, order)
    )
    return PerturbedLP(lp, rhs, order)


@dataclass(frozen=True)
class WorkingSet:
    indices: tuple[int, ...]
    matrix: Matrix
    b_W: tuple


def working_set(lp, indices: Sequence[int]) -> WorkingSet:
    indices = tuple(indices)
    return WorkingSet(indices, rows_matrix(lp, indices),
                      tuple(constraint_rhs(lp, i) for i in indices))


@dataclass(frozen=True)
class LexVertex:
    working: WorkingSet
    x_eps: tuple  # LexValues
    lambda_bar: tuple
    pivots: int = 0


@dataclass(frozen=True)
class Unbounded:
    """Ray ``p`` with ``A_E p = 0``, ``A_I p >= 0`` and ``c^T p < 0``."""

    ray: tuple
    status = "unbounded"


@dataclass(frozen=True)
class UnperturbResult:
    x_star: tuple
    lambda_star: tuple
    working: WorkingSet


def _sorted_working(m_E: int, ineq: Sequence[int]) -> tuple[int, ...]:
    return tuple(range(1, m_E + 1)) + tuple(sorted(ineq))


def nonworking_slacks(plp: PerturbedLP, lv: LexVertex) -> dict[int, LexValue]:
    """Perturbed residual of every inequality outside the working set."""
    W = set(lv.working.indices)
    return {
        i: plp.lift(dot(constraint_row(plp, i), lv.x_eps) - constraint_rhs(plp, i))
        for i in range(plp.m_E + 1, plp.m_E + plp.m_I + 1)
        if i not in W
    }


def _check_lex_vertex(plp: PerturbedLP, lv: LexVertex) -> None:
    W = lv.working
    if rank(W.matrix) != plp.n:
        raise ContractViolation("working matrix is singular")
    if any(plp.lift(dot(r, lv.x_eps)) != plp.lift(b) for r, b in zip(W.matrix, W.b_W)):
        raise ContractViolation("working rows are not active at the lex-vertex")
    if W.matrix.transpose().matvec(lv.lambda_bar) != tuple(plp.c):
        raise ContractViolation("multiplier does not reproduce c")
    if any(s.sign() <= 0 for s in nonworking_slacks(plp, lv).values()):
        raise ContractViolation("a non-working inequality is active: lex-vertex is degenerate")


def solve_perturbed(plp: PerturbedLP, start: Sequence) -> LexVertex | Unbounded:
    """Optimal nondegenerate lex-vertex of the perturbed LP, or a descent ray.

    ``start`` must be feasible for the unperturbed problem; it is then
    strictly inside every perturbed inequality.
    """
    lp = plp.base
    n, m_E = lp.n, lp.m_E
    if rank(lp.A) < n:
        raise RankDeficient(f"constraint matrix has rank {rank(lp.A)} < {n}")
    if rank(lp.A_E) < m_E:
        raise RankDeficient("equality rows are linearly dependent")
    if len(start) != n:
        raise DimensionMismatch(f"start has {len(start)} coordinates, LP has {n}")
    check_feasible(lp, start)

    out = descend_to_vertex(plp, tuple(plp.lift(v) for v in start))
    if not out.is_vertex:
        return Unbounded(out.ray)
    x = tuple(plp.lift(v) for v in out.vertex)
    aset = active_set(plp, x)
    if aset.matrix.nrows != n:
        raise ContractViolation(f"lex-vertex has {aset.matrix.nrows} active rows, expected {n}")
    W = _sorted_working(m_E, aset.active_ineq)

    pivots = 0
    objective = plp.lift(dot(lp.c, x))
    while True:
        ws = working_set(plp, W)
        lam = solve_square(ws.matrix.transpose(), lp.c)
        negative = [k for k in range(m_E, n) if lam[k] < 0]
        if not negative:
            lv = LexVertex(ws, x, lam, pivots)
            _check_lex_vertex(plp, lv)
            return lv
        k = negative[0]
        unit = [Fraction(0)] * n
        unit[k] = Fraction(1)
        p = solve_square(ws.matrix, unit)
        in_W = set(W)
        best, blocking = None, []
        for i in range(m_E + 1, lp.m + 1):
            if i in in_W:
                continue
            slope = dot(constraint_row(plp, i), p)
            if slope >= 0:
                continue
            sigma = (dot(constraint_row(plp, i), x) - constraint_rhs(plp, i)) / (-slope)
            if best is None or sigma < best:
                best, blocking = sigma, [i]
            elif sigma == best:
                blocking.append(i)
        if best is None:
            if not verify_ray(lp, p):
                raise ContractViolation("pivot direction is not an unbounded ray")
            return Unbounded(p)
        if len(blocking) != 1 or best.sign() <= 0:
            raise ContractViolation("ratio test is degenerate in the perturbed problem")
        x = tuple(xi + best * pi for xi, pi in zip(x, p))
        new_objective = plp.lift(dot(lp.c, x))
        if not new_objective < objective:
            raise ContractViolation("objective did not strictly decrease")
        objective = new_objective
        W = _sorted_working(m_E, [i for i in W[m_E:] if i != W[k]] + blocking)
        pivots += 1


def unperturb(plp: PerturbedLP, lv: LexVertex) -> UnperturbResult:
    """Optimal vertex, working set and full multiplier for the original LP."""
    lp = plp.base
    ws = working_set(lp, lv.working.indices)
    x_star = solve_square(ws.matrix, ws.b_W)
    lam = [Fraction(0)] * lp.m
    for i, v in zip(ws.indices, lv.lambda_bar):
        lam[i - 1] = v
    lam = tuple(lam)
    if x_star != tuple(constant_part(v) for v in lv.x_eps):
        raise ContractViolation("constant part of x_eps differs from x*")
    if not is_feasible(lp, x_star):
        raise ContractViolation("x* is infeasible for the original LP")
    if lp.A.transpose().matvec(lam) != lp.c:
        raise ContractViolation("A^T lambda != c")
    if any(v < 0 for v in lam[lp.m_E:]):
        raise ContractViolation("negative inequality multiplier")
    if dot(lam, tuple(a - b for a, b in zip(lp.A.matvec(x_star), lp.b))) != 0:
        raise ContractViolation("complementarity fails")
    return UnperturbResult(x_star, lam, ws)
