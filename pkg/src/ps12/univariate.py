"""Univariate B-splines on [0, 1].

Used for restrictions of simplex splines to the macro edges.  The
normalization is the usual Cox-de Boor one: splines on distinct knots sum
to one, and a spline whose knots all coincide is identically zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import solve


def bspline_value(knots: Sequence, t) -> object:
    """Value at ``t`` of the B-spline with the given nondecreasing knots.

    Right-continuous, except that at t = 1 the left limit is taken so that
    splines ending there do not drop to zero.
    """
    knots = list(knots)
    n = len(knots) - 1
    if n < 1 or knots[0] == knots[-1]:
        return 0 * t
    if t < knots[0] or t > knots[-1]:
        return 0 * t
    at_end = t == knots[-1] == 1
    # degree 0 pieces
    vals = []
    for i in range(n):
        a, b = knots[i], knots[i + 1]
        if at_end:
            on = a < b and a < t <= b
        else:
            on = a <= t < b
        vals.append(1 + 0 * t if on else 0 * t)
    for p in range(1, n):
        nxt = []
        for i in range(n - p):
            a, b = knots[i], knots[i + p]
            c, d = knots[i + 1], knots[i + p + 1]
            v = 0 * t
            if b != a:
                v = v + (t - a) / (b - a) * vals[i]
            if d != c:
                v = v + (d - t) / (d - c) * vals[i + 1]
            nxt.append(v)
        vals = nxt
    return vals[0]


def open_knots(d: int) -> list[Fraction]:
    """The open knot vector {0^{d+1}, 1/2, 1^{d+1}}."""
    return [Fraction(0)] * (d + 1) + [Fraction(1, 2)] + [Fraction(1)] * (d + 1)


def basis_knots(d: int, m: int) -> list[Fraction]:
    """Knots of B_m^d, 1 <= m <= d + 2, on the open knot vector."""
    kv = open_knots(d)
    return kv[m - 1 : m + d + 1]


def basis_value(d: int, m: int, t) -> object:
    return bspline_value(basis_knots(d, m), t)


def multiset_knots(mu_a: int, mu_mid: int, mu_b: int) -> list[Fraction]:
    return [Fraction(0)] * mu_a + [Fraction(1, 2)] * mu_mid + [Fraction(1)] * mu_b


def fit_coefficients(d: int, func, extra: int = 7):
    """Coefficients of ``func`` in the basis B_1^d..B_{d+2}^d, or None.

    The coefficients come from exact collocation at interior points of both
    halves of [0, 1] and are then checked at further points.  ``func`` must
    accept Fractions and return exact values.
    """
    n = d + 2
    pts = [Fraction(2 * i + 1, 2 * (n + 1)) for i in range(n + 1) if Fraction(2 * i + 1, 2 * (n + 1)) != Fraction(1, 2)][:n]
    a = [[basis_value(d, m, t) for m in range(1, n + 1)] for t in pts]
    c = solve(a, [func(t) for t in pts])
    checks = [Fraction(i, extra + 1) for i in range(1, extra + 1)] + [Fraction(0), Fraction(1)]
    for t in checks:
        if sum(ci * basis_value(d, m + 1, t) for m, ci in enumerate(c)) != func(t):
            return None
    return c
