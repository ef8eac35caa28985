"""Vertices: classification, brute-force enumeration, descent to a vertex."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import CapExceeded, ContractViolation, RankDeficient, SingularMatrix
from .exact_arith import LexValue
from .linalg import dot, independent_rows, nullspace_vector, rank, solve_square
from .model import (
    MixedLP,
    active_set,
    constraint_row,
    is_feasible,
    max_feasible_step,
    rows_matrix,
)

DEFAULT_SUBSET_CAP = 2_000_000


def default_subset_cap() -> int:
    return int(os.environ.get("LPCERT_SUBSET_CAP", DEFAULT_SUBSET_CAP))


class VertexTag(Enum):
    NOT_VERTEX = "not_vertex"
    NONDEGENERATE = "nondegenerate"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class VertexClass:
    tag: VertexTag
    active_rank: int
    active_count: int


def classify_vertex(lp, x: Sequence) -> VertexClass:
    aset = active_set(lp, x)
    r = rank(aset.matrix)
    count = aset.matrix.nrows
    n = aset.matrix.ncols
    if r < n:
        tag = VertexTag.NOT_VERTEX
    elif count == n:
        tag = VertexTag.NONDEGENERATE
    else:
        tag = VertexTag.DEGENERATE
    return VertexClass(tag, r, count)


def count_subsets(lp: MixedLP) -> int:
    k = lp.n - rank(lp.A_E)
    return comb(lp.m_I, k) if k >= 0 else 0


def enumerate_vertices(lp: MixedLP, cap: int | None = None) -> list[tuple]:
    """All vertices, in lexicographic coordinate order.

    Every choice of ``n - m_E`` inequalities is combined with all the
    equalities; nonsingular systems are solved and the solution is kept if
    feasible.  Degenerate vertices reached from several subsets appear once.
    """
    cap = default_subset_cap() if cap is None else cap
    total = count_subsets(lp)
    if total > cap:
        raise CapExceeded(total, cap)
    n, m_E = lp.n, lp.m_E
    if rank(lp.A) < n:
        return []
    # Redundant equality rows would make every system singular; keep a
    # lowest-index independent subset (feasibility still checks them all).
    eq = tuple(i + 1 for i in sorted(independent_rows(lp.A_E)))
    if len(eq) > n:
        return []
    found = set()
    for chosen in combinations(range(m_E + 1, lp.m + 1), n - len(eq)):
        idx = eq + chosen
        try:
            x = solve_square(rows_matrix(lp, idx), [lp.b[i - 1] for i in idx])
        except SingularMatrix:
            continue
        if is_feasible(lp, x):
            found.add(x)
    return sorted(found)


@dataclass(frozen=True)
class DescentOutcome:
    vertex: tuple | None = None
    ray: tuple | None = None
    trace: tuple = field(default=())  # (iterate, active_rank) pairs, x0 first

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1


def descend_to_vertex(lp, x0: Sequence) -> DescentOutcome:
    """Move from a feasible ``x0`` to a vertex without increasing ``c^T x``.

    Each step follows a null direction of the active-constraint matrix to
    the nearest inactive inequality, so the active rank grows every step and
    at most ``n`` steps are taken.  If the null direction can be oriented
    downhill without ever meeting a constraint, that direction is returned
    as an unbounded ray instead.

    ``lp`` may be a perturbed problem and ``x0`` may hold LexValues.
    """
    n = lp.A_E.ncols
    full = lp.A_E.stack(lp.A_I)
    if rank(full) < n:
        raise RankDeficient(f"constraint matrix has rank {rank(full)} < {n}")
    x = tuple(v if isinstance(v, LexValue) else Fraction(v) for v in x0)
    trace = []
    while True:
        aset = active_set(lp, x)
        r = rank(aset.matrix)
        trace.append((x, r))
        if r == n:
            return DescentOutcome(vertex=x, trace=tuple(trace))
        p = nullspace_vector(aset.matrix)
        candidates = [j for j in aset.inactive_ineq if dot(constraint_row(lp, j), p) != 0]
        if not candidates:
            raise ContractViolation("no inactive inequality moves along the null direction")
        cp = dot(lp.c, p)
        if cp == 0:
            j = candidates[0]
            if dot(constraint_row(lp, j), p) > 0:
                p = tuple(-v for v in p)
        else:
            if cp > 0:
                p = tuple(-v for v in p)
            if not any(dot(constraint_row(lp, j), p) < 0 for j in candidates):
                return DescentOutcome(ray=p, trace=tuple(trace))
        step = max_feasible_step(lp, aset, p)
        x = tuple(xi + step.sigma_hat * pi for xi, pi in zip(x, p))


def verify_ray(lp, p: Sequence) -> bool:
    """``A_E p = 0``, ``A_I p >= 0`` and ``c^T p < 0`` exactly."""
    return (
        all(dot(r, p) == 0 for r in lp.A_E)
        and all(dot(r, p) >= 0 for r in lp.A_I)
        and dot(lp.c, p) < 0
    )
