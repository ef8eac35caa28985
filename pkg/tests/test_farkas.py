from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lpcert.certify import solve
from lpcert.errors import DimensionMismatch
from lpcert.farkas import (
    Combination,
    Separation,
    box_lp,
    farkas,
    verify_combination,
    verify_separation,
)
from lpcert.linalg import Matrix

from corpus import WORK6_A

F = Fraction


def test_identity_combination():
    out = farkas(Matrix.identity(2), (1, 1))
    assert isinstance(out, Combination) and out.case == 1 and out.y == (1, 1)


def test_identity_separation():
    out = farkas(Matrix.identity(2), (-1, 0))
    assert isinstance(out, Separation) and out.case == 2 and out.p == (1, 0)
    assert verify_separation(Matrix.identity(2), (-1, 0), out.witness)


def test_work6_matrix():
    A = Matrix(WORK6_A)
    out = farkas(A, (1, 2, 3))
    assert isinstance(out, Combination)
    assert verify_combination(A, (1, 2, 3), out.y)
    assert verify_combination(A, (1, 2, 3), (2, 1, 0, 0, 0, 0))


def test_box_lp_shape():
    lp = box_lp(Matrix([[1, 2]]), (1, 1))
    assert (lp.m_E, lp.m_I, lp.n) == (0, 5, 2)
    assert lp.b_I == (0, -1, -1, -1, -1)


def test_empty_matrix_and_zero_c():
    assert isinstance(farkas(Matrix([], 2), (0, 0)), Combination)
    assert isinstance(farkas(Matrix([], 2), (0, 1)), Separation)


def test_dimension_check():
    with pytest.raises(DimensionMismatch):
        farkas(Matrix.identity(2), (1,))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_box_multipliers_vanish_in_combination_case(m, n, data):
    ints = st.integers(-2, 2)
    A = Matrix(data.draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=m, max_size=m)), n)
    c = tuple(data.draw(st.lists(ints, min_size=n, max_size=n)))
    out = farkas(A, c)
    sol = solve(box_lp(A, c), start=(0,) * n)
    if isinstance(out, Combination):
        assert sol.objective == 0 and not any(sol.lam[m:])
        assert verify_combination(A, c, out.y)
    else:
        assert sol.objective < 0
        assert verify_separation(A, c, out.p)
