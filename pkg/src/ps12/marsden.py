"""Marsden identities, quasi-interpolation and stability.

Each basis function S_j has a dual polynomial Psi_j(y), a product of
linear factors c_i(y) = 1 - p_i . y over its dual points, and a domain
point, the average of those dual points.  Marsden's identity reads

    (1 - x . y)^d = sum_j S_j(x) Psi_j(y).

The quasi-interpolant uses point functionals built from averages of
subsets of the dual points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .geometry import (
    POINT_BARY,
    REFERENCE_TRIANGLE,
    SUB_CENTROIDS,
    SUBTRIANGLES,
    Triangle,
    barycentric,
    cartesian,
    is_exact_scalar,
)
from .linalg import inf_norm, inverse
from .sbasis import (
    BasisId,
    SplineFunction,
    chain_point,
    eval_basis,
    eval_basis_bary,
    get_basis,
    recursion_matrices,
)

F = Fraction


def _avg(idx: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    n = len(idx)
    return tuple(sum(POINT_BARY[i - 1][r] for i in idx) / n for r in range(3))


def domain_points(basis) -> list[tuple]:
    """Barycentric domain points xi_j, the averages of the dual points.

    Degree 0 has no dual points; there the subtriangle centroids are used.
    """
    spec = get_basis(basis)
    if spec.degree == 0:
        return list(SUB_CENTROIDS)
    return [_avg(idx) for idx in spec.dual]


def _dot(p, y):
    return p[0] * y[0] + p[1] * y[1]


def dual_polynomial_eval(basis, j: int, y, t: Triangle = REFERENCE_TRIANGLE):
    """Psi_j(y) = prod_i (1 - p_i . y) over the dual points of S_j."""
    spec = get_basis(basis)
    pts = t.points
    v = 1
    for i in spec.dual[j - 1]:
        v = v * (1 - _dot(pts[i - 1], y))
    return v


def _exact_all(*vals) -> bool:
    return all(is_exact_scalar(c) for v in vals for c in v)


def marsden_residual(basis, t: Triangle, x, y):
    """|(1 - x . y)^d - sum_j S_j(x) Psi_j(y)|."""
    spec = get_basis(basis)
    s = eval_basis(basis, t, x)
    if not (_exact_all(x, y) and t.exact):
        x = tuple(float(c) for c in x)
        y = tuple(float(c) for c in y)
    lhs = (1 - _dot(x, y)) ** spec.degree
    rhs = sum(sj * dual_polynomial_eval(basis, j + 1, y, t) for j, sj in enumerate(s))
    return abs(lhs - rhs)


def dual_recurrence_residual(d: int, t: Triangle, x, y, variant: str = "standard") -> list:
    """R_d(x) psi_d(y) - (1 - x . y) psi_{d-1}(y), componentwise.

    The tilde variants use the transformed last matrix and dual vector;
    the lower-degree dual vector is always the standard one.
    """
    if not 1 <= d <= 3:
        raise ValueError("degree must be 1..3")
    beta = barycentric(t, x)
    r = recursion_matrices(d, variant)[-1](beta)
    cur = BasisId(d, variant)
    prev = BasisId(d - 1)
    psi = [dual_polynomial_eval(cur, j, y, t) for j in range(1, get_basis(cur).size + 1)]
    if d == 1:
        psi_prev = [1] * 12
    else:
        psi_prev = [dual_polynomial_eval(prev, j, y, t) for j in range(1, get_basis(prev).size + 1)]
    if not (_exact_all(x, y) and t.exact):
        x = tuple(float(c) for c in x)
        y = tuple(float(c) for c in y)
    f = 1 - _dot(x, y)
    return [sum(r[i, j] * psi[j] for j in range(len(psi))) - f * psi_prev[i] for i in range(r.shape[0])]


@dataclass(frozen=True)
class QIFunctional:
    """l(F) = sum_i w_i F(point_i) with points in barycentric coordinates."""

    terms: tuple[tuple[Fraction, tuple], ...]

    def __call__(self, func_bary: Callable):
        return sum(w * func_bary(p) for w, p in self.terms)


def qi_weights(d: int) -> dict[int, Fraction]:
    """Weight m^d / d! (-1)^(d-m) of each m-subset average."""
    return {m: F(m**d * (-1) ** (d - m), factorial(d)) for m in range(1, d + 1)}


def qi_functional(basis, j: int) -> QIFunctional:
    spec = get_basis(basis)
    d = spec.degree
    if d == 0:
        return QIFunctional(((F(1), SUB_CENTROIDS[j - 1]),))
    terms: dict = {}
    for m, w in qi_weights(d).items():
        for sub in combinations(spec.dual[j - 1], m):
            p = _avg(sub)
            terms[p] = terms.get(p, 0) + w
    return QIFunctional(tuple((w, p) for p, w in terms.items() if w != 0))


def qi_apply(basis, t: Triangle, func: Callable) -> SplineFunction:
    """Q_d(F) = sum_j l_j(F) S_j for a function of Cartesian points."""
    spec = get_basis(basis)
    cache: dict = {}

    def fb(p):
        if p not in cache:
            cache[p] = func(cartesian(t, p))
        return cache[p]

    coeffs = [qi_functional(basis, j)(fb) for j in range(1, spec.size + 1)]
    return SplineFunction(spec.id, coeffs, t)


def qi_apply_bary(basis, func_bary: Callable) -> list:
    """QI coefficients for a function given in barycentric coordinates."""
    spec = get_basis(basis)
    return [qi_functional(basis, j)(func_bary) for j in range(1, spec.size + 1)]


def qi_evaluation_points(basis) -> list[tuple]:
    """Distinct evaluation points of all functionals, in first-use order."""
    spec = get_basis(basis)
    seen: dict = {}
    for j in range(1, spec.size + 1):
        for _, p in qi_functional(basis, j).terms:
            seen.setdefault(p, None)
    return list(seen)


def dual_point_averages_cubic() -> list[tuple]:
    """l_1..l_25: the 16 cubic domain points and nine quarterpoints."""
    quarter = [(1, 4), (2, 4), (2, 5), (3, 5), (3, 6), (1, 6), (4, 6), (4, 5), (5, 6)]
    return domain_points(BasisId(3)) + [_avg(q) for q in quarter]


def collocation_matrix(basis, t: Triangle = REFERENCE_TRIANGLE) -> list[list[Fraction]]:
    """M[i][j] = S_j(xi_i), exact; it does not depend on ``t``."""
    spec = get_basis(basis)
    if spec.degree == 0:
        raise ValueError("no collocation matrix for degree 0")
    if not t.exact:
        raise ValueError("collocation matrices need an exact triangle")
    return [eval_basis(basis, t, cartesian(t, xi)) for xi in domain_points(basis)]


def condition_number(basis) -> Fraction:
    """kappa = ||M||_inf ||M^{-1}||_inf."""
    m = collocation_matrix(basis)
    return inf_norm(m) * inf_norm(inverse(m))


def _hessian_norm_piece(spec, coeffs, k: int, beta, a1, a2) -> float:
    """||H||_inf of the spline on subtriangle k (1-based) at ``beta``."""
    d = spec.degree
    if d < 2:
        return 0.0
    units = [tuple(float(r == i) for r in range(3)) for i in range(3)]
    part = np.zeros((3, 3))
    for i in range(3):
        for j in range(i, 3):
            args = [beta] * (d - 2) + [units[j], units[i]]
            g, v = chain_point(spec, k - 1, args)
            val = d * (d - 1) * sum(coeffs[gj] * vj for gj, vj in zip(g, v))
            part[i, j] = part[j, i] = val
    hxx = a1 @ part @ a1
    hxy = a1 @ part @ a2
    hyy = a2 @ part @ a2
    return max(abs(hxx) + abs(hxy), abs(hxy) + abs(hyy))


def max_hessian_norm(f: SplineFunction, grid: int = 50) -> float:
    """Largest ||H||_inf over the pieces of ``f``.

    The Hessian is constant (d = 2) or linear (d = 3) on each subtriangle,
    so its maximum norm is attained at subtriangle vertices; those are
    evaluated one-sided in every piece.  A barycentric grid is sampled too.
    """
    from .geometry import directional, locate_bary

    spec = get_basis(f.basis)
    coeffs = [float(c) for c in f.coeffs]
    a1 = np.array([float(a) for a in directional(f.triangle, (1, 0))])
    a2 = np.array([float(a) for a in directional(f.triangle, (0, 1))])
    best = 0.0
    for k, tri in enumerate(SUBTRIANGLES, start=1):
        for v in tri:
            beta = tuple(float(c) for c in POINT_BARY[v - 1])
            best = max(best, _hessian_norm_piece(spec, coeffs, k, beta, a1, a2))
    for i in range(grid + 1):
        for j in range(grid + 1 - i):
            beta = ((grid - i - j) / grid, i / grid, j / grid)
            k = locate_bary(beta)
            best = max(best, _hessian_norm_piece(spec, coeffs, k, beta, a1, a2))
    return best


def control_point_gap(f: SplineFunction, grid: int = 50) -> tuple[float, float]:
    """(bound, observed) for the distance between values and coefficients.

    observed = max_j |F(xi_j) - c_j|; bound = 2 kappa h^2 max ||H||_inf
    with h the longest edge.
    """
    spec = get_basis(f.basis)
    if spec.degree < 2:
        raise ValueError("the control-point bound needs degree 2 or 3")
    kappa = float(condition_number(f.basis))
    h = f.triangle.diameter
    bound = 2 * kappa * h * h * max_hessian_norm(f, grid)
    observed = 0.0
    for xi, c in zip(domain_points(f.basis), f.coeffs):
        beta = tuple(float(v) for v in xi)
        val = sum(float(cj) * sj for cj, sj in zip(f.coeffs, eval_basis_bary(f.basis, beta)))
        observed = max(observed, abs(val - float(c)))
    return bound, observed
