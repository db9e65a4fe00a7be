from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ps12.linalg import inf_norm, inverse, matmul, solve
from ps12.univariate import basis_value, bspline_value, fit_coefficients, open_knots


def test_open_knots():
    assert open_knots(2) == [0, 0, 0, F(1, 2), 1, 1, 1]


@pytest.mark.parametrize("d", [0, 1, 2, 3])
@given(t=st.fractions(min_value=0, max_value=1))
def test_partition_of_unity(d, t):
    assert sum(basis_value(d, m, t) for m in range(1, d + 3)) == 1


def test_cubic_end_splines():
    t = F(1, 5)
    assert basis_value(3, 1, t) == (1 - 2 * t) ** 3
    assert basis_value(3, 5, F(1)) == 1
    assert basis_value(3, 1, F(1)) == 0


def test_against_sympy_bspline():
    x = sympy.Symbol("x")
    knots = (0, 0, sympy.Rational(1, 2), 1, 1)
    ref = sympy.bspline_basis(3, knots, 0, x)
    for t in (F(1, 7), F(2, 5), F(3, 4)):
        assert bspline_value([F(k) for k in knots], t) == F(str(ref.subs(x, sympy.Rational(t.numerator, t.denominator))))


def test_degenerate_knots_vanish():
    assert bspline_value([F(0)] * 4, F(0)) == 0


def test_fit_coefficients_roundtrip():
    c = fit_coefficients(2, lambda t: 3 * basis_value(2, 1, t) - basis_value(2, 4, t))
    assert c == [3, 0, 0, -1]
    # a polynomial with a jump at 1/2 is not in the space
    assert fit_coefficients(1, lambda t: F(int(t >= F(1, 2)))) is None


@given(st.lists(st.integers(-9, 9), min_size=9, max_size=9), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_solve_matches_sympy(entries, rhs):
    a = [entries[0:3], entries[3:6], entries[6:9]]
    m = sympy.Matrix(a)
    if m.det() == 0:
        with pytest.raises(ZeroDivisionError):
            solve(a, rhs)
        return
    want = m.LUsolve(sympy.Matrix(rhs))
    assert solve(a, rhs) == [F(str(v)) for v in want]


def test_inverse_and_norm():
    a = [[2, 1], [1, 1]]
    assert matmul(a, inverse(a)) == [[1, 0], [0, 1]]
    assert inf_norm(inverse(a)) == 3
