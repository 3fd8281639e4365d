from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pasystole.numfield import (
    DivisionByZero,
    NotAnEigenvalue,
    NumberField,
    field_arith,
    integer_charpoly,
    sign_of,
    solve_eigenvector,
    sturm_count,
)

from reference import ALPHA_INTERVAL, ALPHA_MINPOLY, GENUS4_R, LAMBDA, TAU

F = NumberField(ALPHA_MINPOLY, *ALPHA_INTERVAL)
ALPHA = F.gen()
ALPHA_VALUE = -1.2806381562677585

coords = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=8, max_size=8)


def test_reduction_relations():
    assert field_arith("mul", ALPHA ** 7, ALPHA) == F.element((-1, 0, 0, -1, 1, -1, 0, 0))
    # alpha * (alpha^2 - alpha^3 + alpha^4 + alpha^7) = -1 under the relation above
    w = F.element((0, 0, 1, -1, 1, 0, 0, 1))
    assert ALPHA * w == -F.one()
    assert field_arith("inv", ALPHA) == -w
    x = F.element((1, 2, 3))
    assert field_arith("add", x, F.zero()) == x
    assert x * F.one() == x


def test_embedding_and_signs():
    assert float(ALPHA) == pytest.approx(ALPHA_VALUE, abs=1e-12)
    assert sign_of(F.zero()) == 0
    assert sign_of(ALPHA) == -1
    assert sign_of(ALPHA * ALPHA - 1) == 1
    below = F.from_int(Fraction(-1281, 1000))
    assert sign_of(ALPHA - below) == 1  # alpha = -1.28064 > -1.281


def test_interval_validation():
    with pytest.raises(ValueError):
        NumberField(ALPHA_MINPOLY, 0, 1)  # no root there
    with pytest.raises(ValueError):
        NumberField((1, 0, -2), -2, 2)  # two roots
    assert sturm_count([Fraction(c) for c in (1, 0, -2)], -2, 2) == 2


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F.zero().inverse()


@settings(max_examples=200, deadline=None)
@given(coords, coords, coords)
def test_field_axioms(a, b, c):
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F.zero()
    if not x.is_zero():
        assert x * x.inverse() == F.one()
        assert (y / x) * x == y
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(coords)
def test_sign_matches_float(a):
    x = F.element(a)
    v = float(x)
    if abs(v) > 1e-9:
        assert sign_of(x) == (1 if v > 0 else -1)


def test_integer_charpoly():
    M = [[2, 1], [1, 1]]
    assert integer_charpoly(M) == (1, -3, 1)
    R = np.array(GENUS4_R)
    assert np.allclose(np.poly(R.astype(float)), integer_charpoly(GENUS4_R))


def test_eigenvectors_match_tables():
    lam = solve_eigenvector(GENUS4_R, ALPHA ** 4, normalize=8)
    assert lam == [F.element(c) for c in LAMBDA]
    tau = solve_eigenvector(GENUS4_R, ALPHA ** -4, normalize=8)
    expected = [F.element(c) for c in TAU]
    scale = expected[8]
    assert [t * scale for t in tau] == expected


def test_identity_eigenvector():
    v = solve_eigenvector([[1, 0], [0, 1]], NumberField((1, -2), 1, 3).one())
    assert float(v[0]) == 1


def test_not_an_eigenvalue():
    with pytest.raises(NotAnEigenvalue):
        solve_eigenvector(GENUS4_R, ALPHA)


def test_to_strings():
    assert F.element((Fraction(1, 2),)).to_strings()[:2] == ["1/2", "0"]
