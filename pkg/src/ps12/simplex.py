"""Reference evaluation of simplex splines with knots among p1..p10.

This module is the independent oracle for the basis machinery.  A simplex
spline is evaluated with the recursion in barycentric weights down to
three-knot indicators, never through the recursion matrices.  All knot
positions are given in barycentric coordinates, so the results do not
depend on the macro triangle.

Simplex splines are area normalized: Q[K] integrates to area(Δ) times a
fixed constant, and a three-knot spline on [a, b, c] equals
area(Δ) / area([a, b, c]) on that triangle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .geometry import (
    EDGES,
    INTERIOR_LINES,
    POINT_BARY,
    SUB_CENTROIDS,
    SYMMETRIES,
    Triangle,
    apply3,
    apply_symmetry,
    barycentric,
    directional,
    frame_inverse,
    is_exact_scalar,
    locate_bary,
    FLOAT_TOL,
)
from .univariate import basis_value, bspline_value, fit_coefficients, multiset_knots


@dataclass(frozen=True)
class KnotMultiset:
    """Multiplicities (mu_1, ..., mu_10) of the split points."""

    mu: tuple[int, ...]

    def __post_init__(self):
        mu = tuple(int(m) for m in self.mu)
        if len(mu) == 6:
            mu = mu + (0, 0, 0, 0)
        if len(mu) != 10 or min(mu) < 0:
            raise ValueError("a knot multiset has ten nonnegative multiplicities")
        if sum(mu) < 3:
            raise ValueError("a simplex spline needs at least three knots")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def parse(cls, s: str) -> "KnotMultiset":
        """Parse the 6- or 10-digit notation, e.g. ``"211101"``."""
        s = s.strip()
        if not re.fullmatch(r"\d{6}|\d{10}", s):
            raise ValueError(f"bad knot multiset notation: {s!r}")
        return cls(tuple(int(c) for c in s))

    def __str__(self) -> str:
        return "".join(str(m) for m in self.mu)

    @property
    def size(self) -> int:
        return sum(self.mu)

    @property
    def degree(self) -> int:
        return self.size - 3

    def without(self, i: int) -> "KnotMultiset":
        mu = list(self.mu)
        mu[i] -= 1
        return KnotMultiset(tuple(mu))

    def with_(self, i: int) -> "KnotMultiset":
        mu = list(self.mu)
        mu[i] += 1
        return KnotMultiset(tuple(mu))

    def present(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mu) if m)

    def pretty(self) -> str:
        parts = []
        for i, m in enumerate(self.mu):
            if m:
                parts.append(f"p{i + 1}" + (f"^{m}" if m > 1 else ""))
        return " ".join(parts)


def _as_mu(K) -> tuple[int, ...]:
    if isinstance(K, KnotMultiset):
        return K.mu
    if isinstance(K, str):
        return KnotMultiset.parse(K).mu
    return KnotMultiset(tuple(K)).mu


def _det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _collinear(i: int, j: int, k: int) -> bool:
    return _det3(POINT_BARY[i], POINT_BARY[j], POINT_BARY[k]) == 0


@lru_cache(maxsize=None)
def first_triple(mu: tuple[int, ...]):
    """First affinely independent triple of present knots, or None."""
    pres = [i for i, m in enumerate(mu) if m]
    for tri in combinations(pres, 3):
        if not _collinear(*tri):
            return tri
    return None


@lru_cache(maxsize=None)
def _frame(tri: tuple[int, int, int]):
    return frame_inverse(tri)


@lru_cache(maxsize=None)
def _frame_float(tri: tuple[int, int, int]):
    return tuple(tuple(float(v) for v in row) for row in frame_inverse(tri))


def hull_area_ratio(mu: Sequence[int]) -> Fraction:
    """area(conv K) / area(Δ), exact."""
    pts = sorted({(POINT_BARY[i][1], POINT_BARY[i][2]) for i, m in enumerate(mu) if m})
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    a2 = sum(
        hull[i][0] * hull[(i + 1) % len(hull)][1] - hull[(i + 1) % len(hull)][0] * hull[i][1]
        for i in range(len(hull))
    )
    # reference triangle in (beta2, beta3) has area 1/2
    return abs(Fraction(a2))


def _exact_point(beta) -> bool:
    return all(is_exact_scalar(c) for c in beta)


def _base_value(tri, beta, k_loc: int):
    """Value of the three-knot spline on knots ``tri`` at ``beta``."""
    exact = _exact_point(beta)
    lam = apply3(_frame(tri), beta) if exact else apply3(_frame_float(tri), beta)
    tol = 0 if exact else FLOAT_TOL
    if min(lam) < -tol:
        return 0
    if min(lam) <= tol:
        # on the boundary of the knot triangle: half-open rule
        if k_loc == 0:
            return 0
        cen = apply3(_frame(tri), SUB_CENTROIDS[k_loc - 1])
        if min(cen) < 0:
            return 0
    ratio = 1 / hull_area_ratio(_mu_of(tri))
    return ratio if exact else float(ratio)


@lru_cache(maxsize=None)
def _mu_of(idx: tuple[int, ...]) -> tuple[int, ...]:
    mu = [0] * 10
    for i in idx:
        mu[i] += 1
    return tuple(mu)


def _triple_for(mu, rule: str):
    pres = [i for i, m in enumerate(mu) if m]
    if rule == "first":
        return first_triple(mu)
    if rule == "last":
        for tri in sorted(combinations(pres, 3), reverse=True):
            if not _collinear(*tri):
                return tri
        return None
    raise ValueError(f"unknown weight rule: {rule!r}")


def _weights(mu, beta, rule: str, exact: bool) -> dict:
    """Admissible recursion weights as {knot index: weight}."""
    if rule == "blend":
        a = _weights(mu, beta, "first", exact)
        b = _weights(mu, beta, "last", exact)
        half = Fraction(1, 2) if exact else 0.5
        out = {}
        for i in set(a) | set(b):
            out[i] = half * a.get(i, 0) + half * b.get(i, 0)
        return out
    tri = _triple_for(mu, rule)
    if tri is None:
        return {}
    m = _frame(tri) if exact else _frame_float(tri)
    return dict(zip(tri, apply3(m, beta)))


WEIGHT_RULES = ("first", "last", "blend")


def choose_recursion_weights(K, beta, rule: str = "first") -> list:
    """Weights (one per split point) with sum 1 and sum w_i p_i = x.

    The default rule puts them on the first affinely independent triple of
    present knots in index order; ``"last"`` uses the last such triple and
    ``"blend"`` averages the two.  ``beta`` is the point in barycentric
    coordinates with respect to Δ.
    """
    mu = _as_mu(K)
    if first_triple(mu) is None:
        raise ValueError("knots are collinear")
    w = [0] * 10
    for i, v in _weights(mu, beta, rule, _exact_point(beta)).items():
        w[i] = v
    return w


def _eval(mu, beta, k_loc, memo, rule):
    got = memo.get(mu)
    if got is not None:
        return got
    tri = first_triple(mu)
    if tri is None:
        val = 0
    elif sum(mu) == 3:
        val = _base_value(tri, beta, k_loc)
    else:
        val = 0
        for i, w in _weights(mu, beta, rule, memo["exact"]).items():
            if w != 0:
                sub = list(mu)
                sub[i] -= 1
                val = val + w * _eval(tuple(sub), beta, k_loc, memo, rule)
    memo[mu] = val
    return val


def oracle_eval_bary(K, beta, rule: str = "first"):
    """Q[K] at the point with barycentric coordinates ``beta``.

    The memo cache lives only for this call.
    """
    mu = _as_mu(K)
    exact = _exact_point(beta)
    if exact:
        beta = tuple(Fraction(c) for c in beta)
    else:
        beta = tuple(float(c) for c in beta)
    k_loc = locate_bary(beta)
    memo = {"exact": exact}
    v = _eval(mu, beta, k_loc, memo, rule)
    return Fraction(v) if exact else float(v)


def oracle_eval(K, t: Triangle, x, rule: str = "first"):
    """Q[K](x) for knots among the split points of ``t``."""
    return oracle_eval_bary(K, barycentric(t, x), rule)


def oracle_eval_many(K, t: Triangle, xs) -> list:
    return [oracle_eval(K, t, x) for x in xs]


@dataclass
class WeightedCombination:
    """A finite sum of scaled simplex splines."""

    terms: list[tuple[object, KnotMultiset]] = field(default_factory=list)

    def add(self, coef, K: KnotMultiset) -> None:
        if coef == 0 or first_triple(K.mu) is None:
            return
        for n, (c, k2) in enumerate(self.terms):
            if k2 == K:
                self.terms[n] = (c + coef, K)
                if self.terms[n][0] == 0:
                    del self.terms[n]
                return
        self.terms.append((coef, K))

    def scaled(self, s) -> "WeightedCombination":
        return WeightedCombination([(s * c, K) for c, K in self.terms])

    def eval_bary(self, beta):
        return sum((c * oracle_eval_bary(K, beta) for c, K in self.terms), 0 * beta[0])

    def __call__(self, t: Triangle, x):
        return self.eval_bary(barycentric(t, x))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*Q[{K}]" for c, K in self.terms)


def oracle_derivative(K, t: Triangle, u) -> WeightedCombination:
    """D_u Q[K] = d * sum_j a_j Q[K minus k_j], where a are the directional
    coordinates of ``u`` with respect to the first affinely independent
    triple of knots.  Terms with collinear knots are dropped."""
    return oracle_derivative_dir(K, directional(t, u))


def oracle_derivative_dir(K, alpha) -> WeightedCombination:
    """As :func:`oracle_derivative` with ``u`` given by its directional
    coordinates with respect to Δ."""
    mu = _as_mu(K)
    tri = first_triple(mu)
    out = WeightedCombination()
    if tri is None:
        return out
    exact = _exact_point(alpha)
    a = apply3(_frame(tri) if exact else _frame_float(tri), alpha)
    d = sum(mu) - 3
    km = KnotMultiset(mu)
    if sum(mu) == 3:
        return out
    for i, w in zip(tri, a):
        out.add(d * w, km.without(i))
    return out


def _insertion_weights(mu, y: int):
    """Weights c over present knots with sum c_j k_j = p_y and sum 1."""
    if mu[y]:
        return {y: Fraction(1)}
    pres = [i for i, m in enumerate(mu) if m]
    target = POINT_BARY[y]
    for i, j in combinations(pres, 2):
        if _collinear(i, j, y):
            a, b = POINT_BARY[i], POINT_BARY[j]
            r = next(r for r in range(3) if a[r] != b[r])
            s = (target[r] - a[r]) / (b[r] - a[r])
            return {i: 1 - s, j: s}
    tri = first_triple(mu)
    if tri is None:
        raise ValueError("knots are collinear")
    lam = apply3(_frame(tri), target)
    return dict(zip(tri, lam))


def knot_insert(K, y: int) -> WeightedCombination:
    """Insert split point ``y`` (1-based) into the knots of Q[K].

    Q[K] = sum_j c_j Q[(K + y) minus k_j], where c are barycentric
    weights of p_y with respect to present knots.  A collinear pair
    containing p_y is preferred, else the first independent triple.
    """
    mu = _as_mu(K)
    yi = y - 1
    km = KnotMultiset(mu).with_(yi)
    out = WeightedCombination()
    for i, c in sorted(_insertion_weights(mu, yi).items()):
        out.add(c, km.without(i))
    return out


@dataclass(frozen=True)
class EdgeRestriction:
    """A univariate spline on an edge reparametrized to [0, 1].

    ``coeffs`` are the coefficients in the B-splines B_1^k..B_{k+2}^k of
    the open knot vector {0^{k+1}, 1/2, 1^{k+1}}.  Restrictions of simplex
    splines also record ``scale`` and the knot multiplicities (a, m, b) of
    {0^a, 1/2^m, 1^b}; for them ``coeffs`` is None when the restriction is
    not in that spline space.
    """

    degree: int
    coeffs: tuple | None
    scale: Fraction | None = None
    knots: tuple[int, int, int] | None = None

    def __call__(self, t):
        if self.coeffs is not None:
            return sum(c * basis_value(self.degree, m + 1, t) for m, c in enumerate(self.coeffs))
        return self.scale * bspline_value(multiset_knots(*self.knots), t)


def restrict_to_edge(K, edge: tuple[int, int]) -> EdgeRestriction | None:
    """Restriction of Q[K] to the macro edge (i, k); None if it vanishes."""
    mu = _as_mu(K)
    i, k = sorted(edge)
    mid = next((e[2] for e in EDGES if (e[0], e[1]) == (i, k)), None)
    if mid is None:
        raise ValueError(f"not a macro edge: {edge}")
    a, m, b = mu[i - 1], mu[mid - 1], mu[k - 1]
    n = sum(mu)
    if a + m + b < n - 1:
        return None
    area = hull_area_ratio(mu)
    if area == 0:
        return None
    scale = 1 / area
    knots = multiset_knots(a, m, b)
    if knots[0] == knots[-1]:
        return None
    deg = n - 3
    c = fit_coefficients(deg, lambda t: scale * bspline_value(knots, t))
    return EdgeRestriction(deg, tuple(c) if c is not None else None, scale, (a, m, b))


def bspline(knots: Sequence, t):
    """Normalized univariate B-spline (Cox-de Boor)."""
    return bspline_value(sorted(knots), t)


def min_smoothness_at(K, t: Triangle, x) -> int:
    """Guaranteed smoothness order of Q[K] at ``x``.

    This is d + 1 - m, where m is the largest number of knots (counted
    with multiplicity) on a line through ``x`` that contains at least two
    distinct knots.  When no such line exists the result is d + 1.
    """
    mu = _as_mu(K)
    d = sum(mu) - 3
    beta = barycentric(t, x)
    exact = _exact_point(beta)
    pres = [i for i, m in enumerate(mu) if m]
    best = None
    for i, j in combinations(pres, 2):
        det = _det3(POINT_BARY[i], POINT_BARY[j], beta)
        if (det != 0) if exact else abs(det) > FLOAT_TOL:
            continue
        m = sum(mu[k] for k in pres if k in (i, j) or _collinear(i, j, k))
        best = m if best is None else max(best, m)
    return d + 1 if best is None else d + 1 - best


def canonical_form(mu: Sequence[int]) -> tuple[int, ...]:
    """Orbit representative: the lexicographically largest image."""
    return max(apply_symmetry(g, mu) for g in SYMMETRIES)


def orbit(mu: Sequence[int]) -> set[tuple[int, ...]]:
    return {apply_symmetry(g, mu) for g in SYMMETRIES}


FORBIDDEN_PAIRS = ((1, 8), (1, 9), (8, 9), (2, 7), (2, 9), (7, 9), (3, 7), (3, 8), (7, 8))


def _admissible(mu, d: int) -> bool:
    if sum(mu) != d + 3:
        return False
    for i, j in FORBIDDEN_PAIRS:
        if mu[i - 1] and mu[j - 1]:
            return False
    r = d - 1
    for ln in INTERIOR_LINES:
        vals = [mu[i - 1] for i in ln]
        if sum(1 for v in vals if v) >= 2 and sum(vals) > d + 1 - r:
            return False
    if hull_area_ratio(mu) == 0:
        return False
    if d == 3:
        if mu[0] + mu[1] + mu[2] < 3 or mu[3] + mu[4] + mu[5] > 3:
            return False
    return True


def _boundary_ok(mu) -> bool:
    # a restriction with |K| - 1 knots on the edge must be a single
    # B-spline of the open knot vector or vanish (all knots coincide)
    n = sum(mu)
    for i, k, m in EDGES:
        a, mm, b = mu[i - 1], mu[m - 1], mu[k - 1]
        if a + mm + b != n - 1 or mm == 1:
            continue
        if [a, mm, b].count(0) < 2:
            return False
    return True


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def enumerate_simplex_splines(d: int, boundary_filter: bool = True) -> list[KnotMultiset]:
    """C^{d-1} simplex splines of degree d on the split, one per orbit.

    Candidates satisfy the knot-line, multiplicity and area conditions;
    with ``boundary_filter`` they must also restrict to each macro edge as
    zero or a single B-spline of the open knot vector.  The representative
    of each symmetry orbit is its lexicographically largest member.
    """
    if not 0 <= d <= 3:
        raise ValueError("degree must be between 0 and 3")
    n = d + 3
    reps = set()
    for mu in _compositions(n, 10):
        if not _admissible(mu, d):
            continue
        if boundary_filter and not _boundary_ok(mu):
            continue
        reps.add(canonical_form(mu))
    return [KnotMultiset(m) for m in sorted(reps, reverse=True)]
