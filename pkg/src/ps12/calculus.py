"""Derivatives of S-basis functions.

Because the matrix entries are stored as homogeneous linear forms, the
constant derivative matrix U_{d,u} is just R_d evaluated at the
directional coordinates of u.  By the exchange identity the derivative
can be moved to the last factors of the product:

    D_{u_m} ... D_{u_1} s_d^T
        = d!/(d-m)! e_k^T R_1(beta) ... R_{d-m}(beta) U_{d-m+1,u_m} ... U_{d,u_1}.

For d = 3 this gives 3 R1 R2 U3, 6 R1 U2 U3 and 6 U1 U2 U3; lower degrees
use the same pattern.  Off knot lines the result is exact.  On a knot
line the value from the assigned half-open subtriangle is returned, which
is a one-sided derivative for top-order derivatives.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence

import numpy as np

from .geometry import (
    Triangle,
    barycentric,
    barycentric_many,
    directional,
    is_exact_scalar,
    locate_bary,
    locate_bary_many,
)
from .sbasis import BasisId, chain_many, chain_point, get_basis, recursion_matrices
from .simplex import EdgeRestriction
from .univariate import fit_coefficients

F = Fraction


def derivative_matrix(d: int, alpha: Sequence, variant: str = "standard") -> np.ndarray:
    """U_{d,u}: the last recursion matrix evaluated at directional
    coordinates ``alpha`` (which must sum to zero)."""
    if sum(alpha) != 0 and not all(isinstance(a, float) for a in alpha):
        raise ValueError("directional coordinates must sum to zero")
    return recursion_matrices(d, variant)[-1](alpha)


def _exact(v) -> bool:
    return all(is_exact_scalar(c) for c in v)


def _stage_args(d: int, beta, alphas) -> list:
    m = len(alphas)
    if m > d:
        raise ValueError(f"derivative order {m} exceeds degree {d}")
    # the last stage carries the first direction
    return [beta] * (d - m) + list(reversed(alphas))


def eval_derivatives_bary(basis, beta, alphas: Sequence[Sequence]) -> list:
    """D_{u_m}...D_{u_1} of all basis functions at a barycentric point.

    ``alphas`` lists the directional coordinates of u_1, ..., u_m.
    Zero outside Δ.
    """
    spec = get_basis(basis)
    d = spec.degree
    args = _stage_args(d, beta, alphas)
    exact = _exact(beta) and all(_exact(a) for a in alphas)
    zero = F(0) if exact else 0.0
    out = [zero] * spec.size
    k = locate_bary(beta)
    if k == 0:
        return out
    scale = factorial(d) // factorial(d - len(alphas))
    g, v = chain_point(spec, k - 1, args)
    for j, val in zip(g, v):
        out[j] = scale * val
    return out


def eval_derivatives(basis, t: Triangle, x, dirs: Sequence[Sequence]) -> list:
    """Directional derivatives of all basis functions at ``x``.

    ``dirs`` is the stack u_1, ..., u_m of Cartesian direction vectors;
    the result is D_{u_m} ... D_{u_1} s_d(x).
    """
    return eval_derivatives_bary(basis, barycentric(t, x), [directional(t, u) for u in dirs])


def eval_derivatives_many(basis, t: Triangle, xs, dirs: Sequence[Sequence], use_numba=None) -> np.ndarray:
    """Float batch version of :func:`eval_derivatives`, shape (n, n_d)."""
    spec = get_basis(basis)
    d = spec.degree
    betas = barycentric_many(t, xs)
    alphas = [np.asarray([float(a) for a in directional(t, u)]) for u in dirs]
    stage = _stage_args(d, None, alphas)
    args = np.empty((d, len(betas), 3))
    for s, a in enumerate(stage):
        args[s] = betas if a is None else a
    scale = factorial(d) // factorial(d - len(alphas))
    return scale * chain_many(spec, locate_bary_many(betas), args, use_numba)


def _multinomial_terms(alpha1, alpha2, m1: int, m2: int):
    """Expand D_{e1}^{m1} D_{e2}^{m2} into sums over beta-partials.

    Each directional derivative D_u is sum_i alpha_i d/dbeta_i, so the
    product expands into (coefficient, list of unit directions).
    """
    for idx in product(range(3), repeat=m1 + m2):
        c = 1
        for n, i in enumerate(idx):
            c = c * (alpha1[i] if n < m1 else alpha2[i])
        if c != 0:
            yield c, idx


def _unit(i: int, exact: bool):
    one, zero = (F(1), F(0)) if exact else (1.0, 0.0)
    return tuple(one if r == i else zero for r in range(3))


def cartesian_partial(basis, t: Triangle, x, orders: tuple[int, int]) -> list:
    """Partial derivative d^{m1+m2}/dx^{m1} dy^{m2} of all basis functions.

    Expands both directional derivatives over the formal unit vectors e_i
    of barycentric space; with commuting partials this is the double
    multinomial sum.
    """
    m1, m2 = orders
    spec = get_basis(basis)
    if m1 < 0 or m2 < 0 or m1 + m2 > spec.degree:
        raise ValueError(f"invalid partial order {orders} for degree {spec.degree}")
    beta = barycentric(t, x)
    a1 = directional(t, (1, 0))
    a2 = directional(t, (0, 1))
    exact = _exact(beta) and _exact(a1) and _exact(a2)
    if not exact:
        beta = tuple(float(b) for b in beta)
        a1 = tuple(float(a) for a in a1)
        a2 = tuple(float(a) for a in a2)
    total = [F(0) if exact else 0.0] * spec.size
    # the beta-partials only depend on the multiset of units, so group them
    groups: dict = {}
    for c, idx in _multinomial_terms(a1, a2, m1, m2):
        key = tuple(sorted(idx))
        groups[key] = groups.get(key, 0) + c
    for key, c in groups.items():
        vals = eval_derivatives_bary(basis, beta, [_unit(i, exact) for i in key])
        total = [a + c * b for a, b in zip(total, vals)]
    return total


#: Sigma order used by the derivative restriction table (1-based).
SIGMA = (1, 2, 3, 4, 5, 12, 13, 14, 6, 11, 16, 7, 15, 10, 8, 9)


def edge_derivative_restriction(i: int, order: int, alpha: Sequence) -> EdgeRestriction | None:
    """Scaled derivative of S_{sigma_i,3} restricted to the edge [p1, p2].

    ``i`` is the position in sigma order (the row of the restriction
    table), ``alpha`` the directional coordinates of u.  The function
    (3-order)!/3! D_u^order S restricted to the edge is expressed in the
    B-splines of degree 3 - order on {0, 1/2, 1}.  Returns None when it
    vanishes identically.
    """
    if not 1 <= i <= 16:
        raise ValueError("sigma position must be in 1..16")
    if not 0 <= order <= 2:
        raise ValueError("order must be 0, 1 or 2")
    j = SIGMA[i - 1] - 1
    alpha = tuple(F(a) for a in alpha)
    scale = Fraction(factorial(3 - order), factorial(3))

    def restricted(tt):
        beta = (1 - tt, tt, F(0))
        return scale * eval_derivatives_bary(BasisId(3), beta, [alpha] * order)[j]

    deg = 3 - order
    c = fit_coefficients(deg, restricted)
    if c is None:
        raise ArithmeticError("restriction is not in the edge spline space")
    if all(v == 0 for v in c):
        return None
    return EdgeRestriction(deg, tuple(c))
