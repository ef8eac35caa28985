import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lpcert.certify import (
    DescentDirection,
    Infeasible,
    NondegenerateOptimal,
    Optimal,
    check_certificate,
    coordinate_bound,
    dual_bound,
    find_feasible_point,
    nondegenerate_vertex_test,
    optimal_working_set_at,
    solve,
    transfer_check,
    verify,
    verify_infeasibility_witness,
)
from lpcert.errors import (
    DimensionMismatch,
    NotDualFeasible,
    NotFeasible,
    NotNondegenerate,
    NotOptimalVertex,
)
from lpcert.model import active_set, is_feasible, make_lp
from lpcert.perturb import Unbounded, perturb, solve_perturbed
from lpcert.vertex import enumerate_vertices, verify_ray

import corpus

F = Fraction
LAM_HAT = (2, 1, 0, 0, 0, 0)


def test_dual_bound_examples(degen2, work6):
    assert dual_bound(degen2, (0, F(1, 3), F(2, 3))) == 0
    assert dual_bound(work6, LAM_HAT) == 7
    with pytest.raises(NotDualFeasible) as info:
        dual_bound(degen2, (2, -1, 0))
    assert info.value.condition == "sign"
    with pytest.raises(NotDualFeasible) as info:
        dual_bound(degen2, (1, 1, 1))
    assert info.value.condition == "stationarity"


def test_check_certificate_examples(degen2, work6):
    assert check_certificate(work6, (F(5, 2), F(3, 4), 1), LAM_HAT).optimal
    assert check_certificate(work6, (3, F(1, 2), 1), LAM_HAT).optimal
    cert = check_certificate(degen2, (1, 2), (2, -1, 0))
    assert not cert.optimal
    assert cert.checks.as_dict() == {"feasible": True, "stationarity": True,
                                     "sign": False, "complementarity": True}
    cert = check_certificate(degen2, (0, 0), (0, F(1, 3), F(2, 3)))
    assert not cert.checks.feasible and not cert.optimal
    with pytest.raises(DimensionMismatch):
        check_certificate(degen2, (1, 2), (1, 2))
    with pytest.raises(DimensionMismatch):
        check_certificate(degen2, (1, 2, 3), (0, 0, 0))


def test_transfer_check_examples(work6):
    cert = check_certificate(work6, (2, 1, 1), LAM_HAT)
    for x in [(2, 1, 1), (3, F(1, 2), 1), (F(5, 2), F(3, 4), 1)]:
        assert transfer_check(work6, cert, x)
    worse = [v for v in enumerate_vertices(work6) if work6.objective(v) > 7]
    assert worse
    for v in worse:
        assert not transfer_check(work6, cert, v)
    with pytest.raises(NotFeasible):
        transfer_check(work6, cert, (0, 0, 0))
    bad = check_certificate(work6, (2, 1, 1), (0,) * 6)
    with pytest.raises(NotDualFeasible):
        transfer_check(work6, bad, (2, 1, 1))


def test_nondegenerate_vertex_test_examples(degen2):
    orth = make_lp([1, 1], A_I=[[1, 0], [0, 1]], b_I=[0, 0])
    assert nondegenerate_vertex_test(orth, (0, 0)) == NondegenerateOptimal((1, 1))
    downhill = make_lp([1, -1], A_I=[[1, 0], [0, 1]], b_I=[0, 0])
    out = nondegenerate_vertex_test(downhill, (0, 0))
    assert isinstance(out, DescentDirection) and out.p == (0, 1)
    assert downhill.objective(out.p) == -1
    with pytest.raises(NotNondegenerate):
        nondegenerate_vertex_test(degen2, (1, 2))
    plp = perturb(degen2)
    lv = solve_perturbed(plp, (4, 2))
    out = nondegenerate_vertex_test(plp, lv.x_eps)
    assert out.lam == (0, F(1, 3), F(2, 3))


def test_optimal_working_set_examples(work6, degen2):
    cert = check_certificate(work6, (2, 1, 1), LAM_HAT)
    assert optimal_working_set_at(work6, (2, 1, 1), cert).indices == (1, 2, 3)
    ws = optimal_working_set_at(work6, (3, F(1, 2), 1), cert)
    assert {1, 2} <= set(ws.indices) and set(ws.indices) <= {1, 2, 5, 6}
    assert ws.indices == (1, 2, 5)
    cert = check_certificate(degen2, (1, 2), (0, F(1, 3), F(2, 3)))
    assert optimal_working_set_at(degen2, (1, 2), cert).indices == (2, 3)


def test_optimal_working_set_rejects_bad_points(work6):
    cert = check_certificate(work6, (2, 1, 1), LAM_HAT)
    with pytest.raises(NotOptimalVertex):
        optimal_working_set_at(work6, (F(5, 2), F(3, 4), 1), cert)  # not a vertex
    worse = max(enumerate_vertices(work6), key=work6.objective)
    with pytest.raises(NotOptimalVertex):
        optimal_working_set_at(work6, worse, cert)
    with pytest.raises(NotOptimalVertex):
        optimal_working_set_at(work6, (0, 0, 0), cert)


def test_find_feasible_point_examples(degen2):
    x = find_feasible_point(degen2)
    assert is_feasible(degen2, x)
    active_set(degen2, x)
    out = find_feasible_point(make_lp([1], A_E=[[1], [1]], b_E=[1, 2]))
    assert isinstance(out, Infeasible) and out.phase1_value is None
    lp = make_lp([1], A_I=[[1], [-1]], b_I=[1, 0])
    out = find_feasible_point(lp)
    assert isinstance(out, Infeasible) and out.phase1_value == F(1, 2)
    assert verify_infeasibility_witness(lp, out.witness)


def test_solve_examples(degen2, work6):
    out = solve(degen2)
    assert isinstance(out, Optimal) and out.x_star == (1, 2) and out.objective == 0
    out = solve(work6, oracle_check=True)
    assert out.objective == 7 and verify(work6, out)


def test_solve_rank_deficient():
    lp = make_lp([1, 1], A_I=[[1, 1]], b_I=[1])
    out = solve(lp)
    assert isinstance(out, Optimal) and out.objective == 1 and out.lam == (1,)
    assert lp.objective(out.x_star) == 1
    assert out.working_set.indices == (1,)  # fewer than n rows: not a vertex
    out = solve(make_lp([-1, -1], A_I=[[1, 1]], b_I=[0]))
    assert isinstance(out, Unbounded) and verify_ray(make_lp([-1, -1], A_I=[[1, 1]], b_I=[0]), out.ray)
    # free variable with zero cost
    lp = make_lp([1, 0], A_I=[[1, 0]], b_I=[2])
    out = solve(lp)
    assert isinstance(out, Optimal) and out.objective == 2


def test_solve_unbounded_and_infeasible():
    lp = make_lp([-1], A_I=[[1]], b_I=[0])
    out = solve(lp)
    assert isinstance(out, Unbounded) and out.ray == (1,)
    lp = make_lp([1], A_I=[[1], [-1]], b_I=[1, 0])
    out = solve(lp)
    assert isinstance(out, Infeasible) and verify(lp, out)


def test_solve_redundant_equalities():
    lp = make_lp([1, 1], A_E=[[1, -1], [2, -2]], b_E=[0, 0], A_I=[[1, 0]], b_I=[1])
    out = solve(lp)
    assert out.x_star == (1, 1) and out.objective == 2
    assert out.working_set.indices[0] == 1 and 3 in out.working_set.indices


def test_solve_zero_cost():
    lp = make_lp([0, 0], A_I=[[1, 0], [0, 1]], b_I=[1, 1])
    out = solve(lp)
    assert isinstance(out, Optimal) and out.degenerate_objective
    assert out.objective == 0 and out.lam == (0, 0)


def test_solve_start_and_order(degen2):
    out = solve(degen2, epsilon_order=(2, 1, 3), start=(4, 2))
    assert out.working_set.indices == (1, 3) and out.lam == (F(1, 2), 0, F(1, 2))
    with pytest.raises(NotFeasible):
        solve(degen2, start=(0, 0))


def test_coordinate_bound_covers_vertices(work6):
    M = coordinate_bound(work6)
    assert all(abs(v) <= M for x in enumerate_vertices(work6) for v in x)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_infeasible_random_instances(seed):
    # x0 feasible for A x >= b, then add a row strictly cutting off the
    # half-space that a known dual combination proves empty.
    rng = random.Random(seed)
    lp, x0, y = corpus.bounded_lp(rng)
    # c^T x >= y^T b holds on the feasible set; demand c^T x <= y^T b - 1.
    bound = sum(yi * bi for yi, bi in zip(y, lp.b))
    rows = list(lp.A_I.rows) + [tuple(-v for v in lp.c)]
    bad = make_lp(lp.c, A_E=lp.A_E.rows, b_E=lp.b_E, A_I=rows, b_I=list(lp.b_I) + [-(bound - 1)])
    out = solve(bad)
    assert isinstance(out, Infeasible) and verify_infeasibility_witness(bad, out.witness)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_solve_matches_enumeration(seed):
    lp, _, _ = corpus.bounded_lp(random.Random(seed))
    out = solve(lp, oracle_check=True)
    assert isinstance(out, Optimal)
    assert out.objective == min(lp.objective(v) for v in enumerate_vertices(lp))
    ws = optimal_working_set_at(lp, out.x_star, out.certificate)
    assert len(ws.indices) == lp.n


def test_verify_rejects_tampered(degen2):
    out = solve(degen2)
    forged = Optimal((4, 2), out.certificate, out.working_set)
    assert not verify(degen2, forged)
    assert not verify(degen2, Unbounded((1, 0)))
    assert not verify(degen2, object())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_row_scaling_keeps_outcome(seed):
    rng = random.Random(seed)
    lp, _ = corpus.free_cost_lp(rng)
    scale = [F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(lp.m_I)]
    rows = [tuple(s * a for a in r) for s, r in zip(scale, lp.A_I)]
    scaled = make_lp(lp.c, A_E=lp.A_E.rows, b_E=lp.b_E, A_I=rows,
                     b_I=[s * b for s, b in zip(scale, lp.b_I)])
    out, out_s = solve(lp), solve(scaled)
    assert out.status == out_s.status
    if isinstance(out, Optimal):
        assert out.objective == out_s.objective
        lam = list(out.lam[:lp.m_E]) + [v / s for v, s in zip(out.lam[lp.m_E:], scale)]
        assert check_certificate(scaled, out.x_star, lam).optimal
