"""Optimality certificates and the top-level solver.

A multiplier ``lam`` certifies a feasible ``x`` as optimal when
``A^T lam = c``, the inequality part of ``lam`` is nonnegative, and
``lam^T (A x - b) = 0``; the optimal value is then ``lam^T b``.
:func:`solve` always returns one of :class:`Optimal`, :class:`Unbounded`
or :class:`Infeasible`, each carrying a witness that is re-verified with
exact arithmetic before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from .errors import (
    ContractViolation,
    DimensionMismatch,
    NotDualFeasible,
    NotFeasible,
    NotNondegenerate,
    NotOptimalVertex,
    RankDeficient,
)
from .linalg import (
    Matrix,
    dot,
    independent_rows,
    particular_solution,
    rank,
    solve_square,
)
from .model import (
    MixedLP,
    active_set,
    check_feasible,
    first_violation,
    num_constraints,
    residual,
)
from .perturb import (
    Unbounded,
    WorkingSet,
    perturb,
    solve_perturbed,
    unperturb,
    working_set,
)
from .vertex import VertexTag, classify_vertex, default_subset_cap, enumerate_vertices, verify_ray

log = logging.getLogger("lpcert")


@dataclass(frozen=True)
class Checks:
    feasible: bool
    stationarity: bool
    sign: bool
    complementarity: bool

    @property
    def ok(self) -> bool:
        return self.feasible and self.stationarity and self.sign and self.complementarity

    def as_dict(self) -> dict[str, bool]:
        return {
            "feasible": self.feasible,
            "stationarity": self.stationarity,
            "sign": self.sign,
            "complementarity": self.complementarity,
        }


@dataclass(frozen=True)
class Certificate:
    lam: tuple
    rhs: tuple
    checks: Checks

    @property
    def dual_value(self) -> Fraction:
        return dot(self.lam, self.rhs)

    @property
    def optimal(self) -> bool:
        return self.checks.ok


def _check_lengths(lp: MixedLP, x: Sequence | None, lam: Sequence | None) -> None:
    if x is not None and len(x) != lp.n:
        raise DimensionMismatch(f"x has {len(x)} entries, LP has {lp.n} variables")
    if lam is not None and len(lam) != lp.m:
        raise DimensionMismatch(f"lambda has {len(lam)} entries, LP has {lp.m} constraints")


def _stationary(lp: MixedLP, lam: Sequence) -> bool:
    return lp.A.transpose().matvec(lam) == tuple(lp.c)


def _sign_ok(lp: MixedLP, lam: Sequence) -> bool:
    return all(v >= 0 for v in lam[lp.m_E:])


def _complementarity(lp: MixedLP, x: Sequence, lam: Sequence) -> Fraction:
    return sum((lam[i - 1] * residual(lp, i, x) for i in range(1, lp.m + 1)), Fraction(0))


def dual_bound(lp: MixedLP, lam: Sequence) -> Fraction:
    """``lam^T b``, a lower bound on ``c^T x`` over the feasible region."""
    lam = tuple(Fraction(v) for v in lam)
    _check_lengths(lp, None, lam)
    if not _stationary(lp, lam):
        raise NotDualFeasible("stationarity", "A^T lambda != c")
    if not _sign_ok(lp, lam):
        raise NotDualFeasible("sign", "an inequality multiplier is negative")
    return dot(lam, lp.b)


def check_certificate(lp: MixedLP, x: Sequence, lam: Sequence) -> Certificate:
    x = tuple(Fraction(v) for v in x)
    lam = tuple(Fraction(v) for v in lam)
    _check_lengths(lp, x, lam)
    checks = Checks(
        feasible=first_violation(lp, x) is None,
        stationarity=_stationary(lp, lam),
        sign=_sign_ok(lp, lam),
        complementarity=_complementarity(lp, x, lam) == 0,
    )
    return Certificate(lam, tuple(lp.b), checks)


def transfer_check(lp: MixedLP, certificate: Certificate, x_other: Sequence) -> bool:
    """Whether ``x_other`` is optimal, given a certificate of the optimal value.

    Valid only when ``certificate.dual_value`` is the optimal value (true for
    any certificate that passed :func:`check_certificate`).
    """
    if not (certificate.checks.stationarity and certificate.checks.sign):
        raise NotDualFeasible("certificate", "multiplier is not dual feasible")
    x_other = tuple(Fraction(v) for v in x_other)
    check_feasible(lp, x_other)
    return _complementarity(lp, x_other, certificate.lam) == 0


# -- vertex-level tests -------------------------------------------------------

@dataclass(frozen=True)
class NondegenerateOptimal:
    lam: tuple


@dataclass(frozen=True)
class DescentDirection:
    p: tuple


def nondegenerate_vertex_test(lp, x: Sequence) -> NondegenerateOptimal | DescentDirection:
    """Optimality test at a nondegenerate vertex.

    Solves ``Abar^T lam = c`` on the (square) active matrix.  Nonnegative
    inequality components give the padded optimal multiplier; otherwise the
    direction that leaves the lowest-indexed offending constraint (and no
    other) is returned, which is a feasible descent direction.

    Also accepts a perturbed problem with a LexValue point.
    """
    vc = classify_vertex(lp, x)
    if vc.tag is not VertexTag.NONDEGENERATE:
        raise NotNondegenerate(f"point is {vc.tag.value}")
    aset = active_set(lp, x)
    m_E = len(aset.eq_indices)
    lam_bar = solve_square(aset.matrix.transpose(), lp.c)
    for k in range(m_E, len(lam_bar)):
        if lam_bar[k] < 0:
            unit = [Fraction(0)] * len(lam_bar)
            unit[k] = Fraction(1)
            return DescentDirection(solve_square(aset.matrix, unit))
    lam = [Fraction(0)] * num_constraints(lp)
    for i, v in zip(aset.indices, lam_bar):
        lam[i - 1] = v
    return NondegenerateOptimal(tuple(lam))


def optimal_working_set_at(lp: MixedLP, x_star: Sequence, ref_certificate: Certificate) -> WorkingSet:
    """Nonsingular optimal working set at a given optimal vertex.

    Starts from the equalities plus the inequalities with positive
    multiplier in ``ref_certificate`` and completes to ``n`` rows with the
    lowest-indexed active rows that raise the rank.
    """
    x_star = tuple(Fraction(v) for v in x_star)
    lam = ref_certificate.lam
    _check_lengths(lp, x_star, lam)
    if not (ref_certificate.checks.stationarity and ref_certificate.checks.sign):
        raise NotDualFeasible("certificate", "multiplier is not dual feasible")
    try:
        check_feasible(lp, x_star)
    except NotFeasible as exc:
        raise NotOptimalVertex(f"x is infeasible: {exc}") from None
    if _complementarity(lp, x_star, lam) != 0:
        raise NotOptimalVertex("complementarity fails: x is not optimal")
    aset = active_set(lp, x_star)
    plus = [i for i in aset.indices if i <= lp.m_E or lam[i - 1] > 0]
    pos = {i: k for k, i in enumerate(aset.indices)}
    seed = [pos[i] for i in plus]
    if rank(aset.matrix.take(seed)) != len(seed):
        raise RankDeficient("rows with positive multipliers are linearly dependent")
    chosen = independent_rows(aset.matrix, seed)
    if len(chosen) != lp.n:
        raise NotOptimalVertex("active constraints have rank < n: x is not a vertex")
    ws = working_set(lp, sorted(aset.indices[k] for k in chosen))
    lam_W = tuple(lam[i - 1] for i in ws.indices)
    if ws.matrix.matvec(x_star) != ws.b_W or ws.matrix.transpose().matvec(lam_W) != tuple(lp.c):
        raise ContractViolation("completed working set does not certify x")
    return ws


# -- solve outcomes -----------------------------------------------------------

@dataclass(frozen=True)
class Optimal:
    x_star: tuple
    certificate: Certificate
    working_set: WorkingSet
    degenerate_objective: bool = False
    status = "optimal"

    @property
    def objective(self) -> Fraction:
        return self.certificate.dual_value

    @property
    def lam(self) -> tuple:
        return self.certificate.lam


@dataclass(frozen=True)
class Infeasible:
    """``witness`` is ``y`` with ``A^T y = 0``, ``y_I >= 0`` and ``b^T y > 0``."""

    witness: tuple
    reason: str
    phase1_value: Fraction | None = None
    status = "infeasible"


SolveOutcome = Optimal | Unbounded | Infeasible


def verify_infeasibility_witness(lp: MixedLP, y: Sequence) -> bool:
    return (
        len(y) == lp.m
        and all(v == 0 for v in lp.A.transpose().matvec(y))
        and all(v >= 0 for v in y[lp.m_E:])
        and dot(y, lp.b) > 0
    )


def verify(lp: MixedLP, outcome) -> bool:
    """Check an outcome's witness from scratch."""
    if isinstance(outcome, Optimal):
        cert = check_certificate(lp, outcome.x_star, outcome.certificate.lam)
        return cert.optimal and cert.dual_value == lp.objective(outcome.x_star)
    if isinstance(outcome, Unbounded):
        return verify_ray(lp, outcome.ray)
    if isinstance(outcome, Infeasible):
        return verify_infeasibility_witness(lp, outcome.witness)
    return False


# -- feasibility --------------------------------------------------------------

def coordinate_bound(lp: MixedLP) -> int:
    """Bound on the coordinates of every basic solution of the constraints.

    Rows ``[a_i | b_i]`` are scaled to integers; by Hadamard's inequality
    every minor is at most the product of the row norms, while every
    nonzero integer determinant is at least 1.
    """
    prod_sq = 1
    for row, b in zip(lp.A, lp.b):
        full = tuple(row) + (b,)
        scale = lcm(*(v.denominator for v in full))
        prod_sq *= max(1, sum(int(v * scale) ** 2 for v in full))
    return isqrt(prod_sq) + 1


def _drop_redundant_equalities(lp: MixedLP) -> tuple[MixedLP, list[int]]:
    kept = independent_rows(lp.A_E)
    kept.sort()
    if len(kept) == lp.m_E:
        return lp, kept
    log.info("dropping %d redundant equality rows", lp.m_E - len(kept))
    return MixedLP(lp.A_E.take(kept), tuple(lp.b_E[k] for k in kept), lp.A_I, lp.b_I, lp.c), kept


def _box_rows(n: int, radius) -> tuple[list, list]:
    rows, rhs = [], []
    for j in range(n):
        for s in (1, -1):
            rows.append([s if k == j else 0 for k in range(n)])
            rhs.append(-radius)
    return rows, rhs


def _with_box(lp: MixedLP, radius) -> MixedLP:
    rows, rhs = _box_rows(lp.n, Fraction(radius))
    A_I = lp.A_I.stack(Matrix(rows, lp.n))
    return MixedLP(lp.A_E, lp.b_E, A_I, tuple(lp.b_I) + tuple(rhs), lp.c)


def infeasibility_witness(lp: MixedLP) -> tuple:
    """Farkas-type witness ``y`` for an infeasible constraint system.

    Minimises ``-b^T y`` over ``A^T y = 0`` with ``y_I >= 0``,
    ``sum(y_I) <= 1`` and ``|y_E| <= 1``; the box makes the auxiliary LP
    bounded with full column rank, and ``y = 0`` is a starting point.
    """
    m, m_E = lp.m, lp.m_E
    ineq_rows, ineq_rhs = [], []
    for i in range(m):
        unit = [int(k == i) for k in range(m)]
        if i < m_E:
            ineq_rows += [unit, [-v for v in unit]]
            ineq_rhs += [-1, -1]
        else:
            ineq_rows.append(unit)
            ineq_rhs.append(0)
    if m > m_E:
        ineq_rows.append([0] * m_E + [-1] * (m - m_E))
        ineq_rhs.append(-1)
    At = lp.A.transpose()
    aux = MixedLP(At, (Fraction(0),) * lp.n, Matrix(ineq_rows, m),
                  tuple(Fraction(v) for v in ineq_rhs), tuple(-v for v in lp.b))
    out = solve(aux, start=(0,) * m)
    if not isinstance(out, Optimal) or out.objective >= 0:
        raise ContractViolation("constraints are infeasible but no Farkas witness was found")
    y = out.x_star
    if not verify_infeasibility_witness(lp, y):
        raise ContractViolation("infeasibility witness fails verification")
    return y


def find_feasible_point(lp: MixedLP) -> tuple | Infeasible:
    """A feasible point, or :class:`Infeasible` with a witness.

    Equalities are solved by elimination; a phase-1 LP then minimises a
    single shift ``s >= 0`` with ``A_I x + s >= b_I`` inside the box
    ``|x_j| <= M`` (see :func:`coordinate_bound`).
    """
    n = lp.n
    x_eq = particular_solution(lp.A_E, lp.b_E)
    if x_eq is None:
        return Infeasible(infeasibility_witness(lp), "equality constraints are inconsistent")
    if first_violation(lp, x_eq) is None:
        return x_eq
    red, _ = _drop_redundant_equalities(lp)
    M = coordinate_bound(lp)
    s0 = max(Fraction(0), max(b - dot(r, x_eq) for r, b in zip(lp.A_I, lp.b_I)))
    box, box_rhs = _box_rows(n, M)
    A_E = Matrix((tuple(r) + (0,) for r in red.A_E), n + 1)
    ineq = [tuple(r) + (1,) for r in lp.A_I] + [(0,) * n + (1,)] + [tuple(r) + (0,) for r in box]
    b_I = tuple(lp.b_I) + (Fraction(0),) + tuple(Fraction(v) for v in box_rhs)
    phase1 = MixedLP(A_E, red.b_E, Matrix(ineq, n + 1), b_I, (Fraction(0),) * n + (Fraction(1),))
    plp = perturb(phase1)
    lv = solve_perturbed(plp, x_eq + (s0,))
    if isinstance(lv, Unbounded):
        raise ContractViolation("phase-1 problem reported unbounded")
    res = unperturb(plp, lv)
    s_star = res.x_star[-1]
    if s_star == 0:
        x = res.x_star[:-1]
        check_feasible(lp, x)
        return x
    return Infeasible(infeasibility_witness(lp), "phase-1 optimum is positive", s_star)


# -- top-level solve ------------------------------------------------------------

def _ray_search(lp: MixedLP) -> tuple | None:
    """A ray ``A_E p = 0, A_I p >= 0, c^T p < 0`` within ``|p_j| <= 1``, if any."""
    n = lp.n
    rows, rhs = _box_rows(n, 1)
    A_E = Matrix(lp.A_E.rows, n)
    aux = MixedLP(A_E, (Fraction(0),) * lp.m_E, lp.A_I.stack(Matrix(rows, n)),
                  (Fraction(0),) * lp.m_I + tuple(Fraction(v) for v in rhs), lp.c)
    plp = perturb(aux)
    lv = solve_perturbed(plp, (0,) * n)
    res = unperturb(plp, lv)
    return res.x_star if lp.objective(res.x_star) < 0 else None


def _solve_full_rank(lp: MixedLP, order, x0):
    plp = perturb(lp, order)
    lv = solve_perturbed(plp, x0)
    if isinstance(lv, Unbounded):
        return lv
    res = unperturb(plp, lv)
    return res.x_star, res.lambda_star, res.working.indices


def _solve_rank_deficient(lp: MixedLP, order, x0, radius: int):
    """Solve with an artificial box; drop the box from the certificate."""
    n, m = lp.n, lp.m
    radius = max(radius, *(abs(v) for v in x0))
    ext_order = None if order is None else tuple(order) + tuple(range(lp.m_I + 1, lp.m_I + 2 * n + 1))
    for attempt in range(2):
        boxed = _with_box(lp, radius)
        out = _solve_full_rank(boxed, ext_order, x0)
        if isinstance(out, Unbounded):
            raise ContractViolation("boxed problem reported unbounded")
        x_star, lam, W = out
        if not any(lam[m:]):
            return x_star, lam[:m], tuple(i for i in W if i <= m)
        if attempt == 0:
            ray = _ray_search(lp)
            if ray is not None:
                return Unbounded(ray)
        radius = 2 * radius + 1
    raise ContractViolation("box multipliers stay positive after enlarging the box")


def solve(
    lp: MixedLP,
    epsilon_order: Sequence[int] | None = None,
    start: Sequence | None = None,
    oracle_check: bool = False,
    subset_cap: int | None = None,
):
    """Solve ``lp`` exactly and return Optimal, Unbounded, or Infeasible."""
    if start is None:
        found = find_feasible_point(lp)
        if isinstance(found, Infeasible):
            return found
        x0 = found
    else:
        x0 = tuple(Fraction(v) for v in start)
        check_feasible(lp, x0)

    red, kept = _drop_redundant_equalities(lp)
    m_E_red = red.m_E

    def lift_index(i: int) -> int:
        return kept[i - 1] + 1 if i <= m_E_red else i - m_E_red + lp.m_E

    def lift_lambda(lam) -> tuple:
        full = [Fraction(0)] * lp.m
        for i, v in enumerate(lam, start=1):
            full[lift_index(i) - 1] = v
        return tuple(full)

    if not any(lp.c):
        lam = (Fraction(0),) * lp.m
        ws = working_set(lp, [k + 1 for k in kept])
        outcome = Optimal(x0, check_certificate(lp, x0, lam), ws, degenerate_objective=True)
    else:
        if rank(red.A) == lp.n:
            out = _solve_full_rank(red, epsilon_order, x0)
        else:
            out = _solve_rank_deficient(red, epsilon_order, x0, coordinate_bound(lp))
        if isinstance(out, Unbounded):
            outcome = out
        else:
            x_star, lam, W = out
            lam = lift_lambda(lam)
            ws = working_set(lp, [lift_index(i) for i in W])
            outcome = Optimal(x_star, check_certificate(lp, x_star, lam), ws)

    if not verify(lp, outcome):
        raise ContractViolation(f"{outcome.status} outcome fails verification")
    if oracle_check:
        _oracle_cross_check(lp, outcome, subset_cap)
    return outcome


def _oracle_cross_check(lp: MixedLP, outcome, cap: int | None) -> None:
    if rank(lp.A) < lp.n:
        return
    vertices = enumerate_vertices(lp, default_subset_cap() if cap is None else cap)
    if isinstance(outcome, Optimal):
        best = min(lp.objective(v) for v in vertices)
        if best != outcome.objective:
            raise ContractViolation(f"vertex minimum {best} differs from solver value {outcome.objective}")
    elif isinstance(outcome, Infeasible) and vertices:
        raise ContractViolation("enumeration found a vertex of an infeasible problem")
