"""Acceptance criteria, one group of tests per criterion.

The conftest prints one PASS/FAIL line per criterion in the terminal summary.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from lpcert.certify import (
    Optimal,
    check_certificate,
    dual_bound,
    optimal_working_set_at,
    solve,
    transfer_check,
)
from lpcert.farkas import Combination, Separation, box_lp, farkas, verify_combination, verify_separation
from lpcert.linalg import Matrix, dot
from lpcert.model import is_feasible
from lpcert.perturb import LexVertex, nonworking_slacks, perturb, solve_perturbed
from lpcert.render import perturbed_instance, render_svg
from lpcert.vertex import VertexTag, classify_vertex, descend_to_vertex, enumerate_vertices, verify_ray

import corpus

F = Fraction
CORPUS_SIZE = 220
FARKAS_SIZE = 600


@pytest.fixture(scope="module")
def bounded():
    items = corpus.bounded_corpus(CORPUS_SIZE)
    assert len(items) >= 200
    return [(lp, x0, y, solve(lp)) for lp, x0, y in items]


@pytest.fixture(scope="module")
def free():
    return [(lp, x0, solve(lp)) for lp, x0 in corpus.free_corpus()]


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


# -- 1 ------------------------------------------------------------------------

C1 = pytest.mark.criterion(1, "golden example A: degenerate 2-variable LP")


@C1
def test_golden_a_default_order(degen2):
    out, dt = timed(solve, degen2)
    assert isinstance(out, Optimal)
    assert out.x_star == (1, 2) and out.objective == 0
    W = out.working_set.indices
    assert W == (2, 3)
    assert tuple(out.lam[i - 1] for i in W) == (F(1, 3), F(2, 3))
    assert dt < 1.0


@C1
def test_golden_a_swapped_order(degen2):
    out, dt = timed(solve, degen2, epsilon_order=(2, 1, 3))
    assert out.x_star == (1, 2) and out.objective == 0
    W = out.working_set.indices
    assert W == (1, 3)
    assert tuple(out.lam[i - 1] for i in W) == (F(1, 2), F(1, 2))
    assert dt < 1.0


# -- 2 ------------------------------------------------------------------------

C2 = pytest.mark.criterion(2, "golden example B: 6-constraint 3-variable LP")


@C2
def test_golden_b(work6):
    t0 = time.perf_counter()
    out = solve(work6)
    assert out.objective == 7
    lam = out.lam
    assert work6.A.T.matvec(lam) == work6.c and all(v >= 0 for v in lam)
    for x in [(2, 1, 1), (3, F(1, 2), 1), (F(5, 2), F(3, 4), 1)]:
        assert transfer_check(work6, out.certificate, x)
    cert = check_certificate(work6, (2, 1, 1), lam)
    assert optimal_working_set_at(work6, (2, 1, 1), cert).indices == (1, 2, 3)
    verts = enumerate_vertices(work6)
    assert (2, 1, 1) in verts and (3, F(1, 2), 1) in verts
    assert time.perf_counter() - t0 < 1.0


# -- 3 ------------------------------------------------------------------------

@pytest.mark.criterion(3, "multiplier-sign counterexample is rejected")
def test_sign_counterexample(degen2):
    cert = check_certificate(degen2, (1, 2), (2, -1, 0))
    assert cert.checks.stationarity and cert.checks.feasible and cert.checks.complementarity
    assert not cert.checks.sign and not cert.optimal


# -- 4 ------------------------------------------------------------------------

@pytest.mark.criterion(4, "perturbed lex-vertices are nondegenerate on the random corpus")
def test_nondegeneracy(bounded):
    failures = []
    for k, (lp, x0, _, _) in enumerate(bounded):
        order = list(range(1, lp.m_I + 1))
        random.Random(k).shuffle(order)
        for o in (None, order):
            plp = perturb(lp, o)
            lv = solve_perturbed(plp, x0)
            assert isinstance(lv, LexVertex)
            vc = classify_vertex(plp, lv.x_eps)
            slacks = nonworking_slacks(plp, lv)
            if not (vc.tag is VertexTag.NONDEGENERATE and vc.active_count == lp.n
                    and all(s.sign() > 0 for s in slacks.values())):
                failures.append(k)
    assert failures == []


# -- 5 ------------------------------------------------------------------------

C5 = pytest.mark.criterion(5, "solver agrees with vertex enumeration")


@C5
def test_oracle_equivalence_bounded(bounded):
    mismatches = [k for k, (lp, _, _, out) in enumerate(bounded)
                  if not isinstance(out, Optimal)
                  or out.objective != min(lp.objective(v) for v in enumerate_vertices(lp))]
    assert mismatches == []


@C5
def test_oracle_equivalence_free_cost(free):
    statuses = {out.status for _, _, out in free}
    assert statuses == {"optimal", "unbounded"}
    mismatches = []
    for k, (lp, _, out) in enumerate(free):
        verts = enumerate_vertices(lp)
        best = min(lp.objective(v) for v in verts)
        if isinstance(out, Optimal):
            ok = out.objective == best
        else:
            v = min(verts, key=lp.objective)
            # the ray leaves the best vertex feasibly and goes below it
            ok = (verify_ray(lp, out.ray) and is_feasible(lp, [a + b for a, b in zip(v, out.ray)])
                  and lp.objective([a + b for a, b in zip(v, out.ray)]) < best)
        if not ok:
            mismatches.append(k)
    assert mismatches == []


# -- 6 ------------------------------------------------------------------------

C6 = pytest.mark.criterion(6, "weak duality and complementarity are exact")


@C6
def test_certificates_are_tight(bounded):
    for lp, _, _, out in bounded:
        x, lam = out.x_star, out.lam
        assert lp.objective(x) == dot(lam, lp.b)
        assert dot(lam, [a - b for a, b in zip(lp.A.matvec(x), lp.b)]) == 0


@C6
def test_fuzzed_dual_feasible_multipliers(bounded):
    rng = random.Random(5)
    checked = 0
    for lp, _, y, out in bounded:
        primal = out.objective
        verts = enumerate_vertices(lp)
        for _ in range(5):
            t = F(rng.randint(0, 8), 8)
            lam = tuple(t * a + (1 - t) * b for a, b in zip(y, out.lam))
            bound = dual_bound(lp, lam)
            assert bound <= primal
            assert all(bound <= lp.objective(v) for v in verts)
            checked += 1
    assert checked >= 1000


# -- 7 ------------------------------------------------------------------------

def _unique_solution(rows, rhs):
    """Unique solution of a consistent full-column-rank system, else None."""
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col] / a[r][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
    if any(row[-1] for row in a[r:]):
        return None
    return [a[i][-1] / a[i][i] for i in range(ncols)]


def cone_member(A, c):
    """Some y >= 0 with A^T y = c, found over row subsets (Caratheodory)."""
    m, n = len(A), len(c)
    if not any(c):
        return (F(0),) * m
    for k in range(1, min(m, n) + 1):
        for S in itertools.combinations(range(m), k):
            cols = [[F(A[i][j]) for i in S] for j in range(n)]
            ys = _unique_solution(cols, [F(v) for v in c])
            if ys is not None and all(v >= 0 for v in ys):
                y = [F(0)] * m
                for i, v in zip(S, ys):
                    y[i] = v
                return tuple(y)
    return None


def grid_separator(A, c, radius=2):
    n = len(c)
    for p in itertools.product(range(-radius, radius + 1), repeat=n):
        if all(sum(a * q for a, q in zip(r, p)) >= 0 for r in A) and sum(a * q for a, q in zip(c, p)) < 0:
            return p
    return None


@pytest.mark.criterion(7, "Farkas alternatives are exclusive and witnessed")
def test_farkas_exclusivity():
    rng = random.Random(99)
    counts = {1: 0, 2: 0}
    for _ in range(FARKAS_SIZE):
        m, n = rng.randint(1, 4), rng.randint(1, 3)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        c = [rng.randint(-2, 2) for _ in range(n)]
        M = Matrix(A, n)
        out = farkas(M, c)
        y_oracle = cone_member(A, c)
        p_grid = grid_separator(A, c)
        assert not (y_oracle is not None and p_grid is not None)
        if isinstance(out, Combination):
            assert y_oracle is not None
            assert verify_combination(M, c, out.y)
            sol = solve(box_lp(M, c), start=(0,) * n)
            assert sol.objective == 0 and not any(sol.lam[m:])
        else:
            assert isinstance(out, Separation) and y_oracle is None
            assert verify_separation(M, c, out.p)
        counts[out.case] += 1
    assert min(counts.values()) > 50


# -- 8 ------------------------------------------------------------------------

@pytest.mark.criterion(8, "descent takes at most n steps with increasing active rank")
def test_descent_bound(bounded):
    rng = random.Random(8)
    runs = 0
    for lp, x0, _, _ in bounded:
        verts = enumerate_vertices(lp)
        starts = [x0]
        v = rng.choice(verts)
        t = F(rng.randint(1, 3), 4)
        starts.append(tuple(t * a + (1 - t) * b for a, b in zip(x0, v)))
        for s in starts:
            out = descend_to_vertex(lp, s)
            ranks = [r for _, r in out.trace]
            assert out.is_vertex
            assert out.iterations <= lp.n
            assert all(a < b for a, b in zip(ranks, ranks[1:]))
            assert lp.objective(out.vertex) <= lp.objective(s)
            runs += 1
    assert runs >= 400


# -- 9 ------------------------------------------------------------------------

@pytest.mark.criterion(9, "rendered perturbations show one and two vertices")
def test_render_vertex_counts(degen2):
    half = F(1, 2)
    counts = []
    for eps, order in [(None, None), (half, (1, 2, 3)), (half, (2, 1, 3))]:
        svg = render_svg(degen2, eps, order)
        drawn = svg.count('class="vertex')
        computed = len(enumerate_vertices(perturbed_instance(degen2, eps, order)))
        assert drawn == computed
        counts.append(computed)
    assert counts == [1, 1, 2]
