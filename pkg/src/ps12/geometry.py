"""Triangle geometry and the Powell-Sabin 12-split.

Everything downstream works in barycentric coordinates with respect to the
macro triangle, so the split is described once here by the barycentric
coordinates of its ten points.  Exact arithmetic uses :class:`Fraction`;
float inputs stay in float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

#: Absolute tolerance on barycentric coordinates used in float mode.
FLOAT_TOL = 1e-12

_H = Fraction(1, 2)
_Q = Fraction(1, 4)
_T = Fraction(1, 3)

#: Barycentric coordinates of p1..p10 (0-based index i is point p_{i+1}).
POINT_BARY: tuple[tuple[Fraction, Fraction, Fraction], ...] = tuple(
    tuple(Fraction(c) for c in b)
    for b in (
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (_H, _H, 0),
        (0, _H, _H),
        (_H, 0, _H),
        (_H, _Q, _Q),
        (_Q, _H, _Q),
        (_Q, _Q, _H),
        (_T, _T, _T),
    )
)

#: Vertices of the twelve subtriangles, 1-based point indices.
SUBTRIANGLES: tuple[tuple[int, int, int], ...] = (
    (1, 6, 7),
    (1, 4, 7),
    (2, 4, 8),
    (2, 5, 8),
    (3, 5, 9),
    (3, 6, 9),
    (6, 7, 10),
    (4, 7, 10),
    (4, 8, 10),
    (5, 8, 10),
    (5, 9, 10),
    (6, 9, 10),
)

#: The edges of the macro triangle as (first vertex, last vertex, midpoint).
EDGES: tuple[tuple[int, int, int], ...] = ((1, 2, 4), (2, 3, 5), (1, 3, 6))

#: The six interior lines of the split (three medians and three midlines).
INTERIOR_LINES: tuple[tuple[int, ...], ...] = (
    (1, 5, 7, 10),
    (2, 6, 8, 10),
    (3, 4, 9, 10),
    (4, 6, 7),
    (4, 5, 8),
    (5, 6, 9),
)


class Point2(NamedTuple):
    """A point in the plane."""

    x: object
    y: object


def is_exact_scalar(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def as_exact(v) -> Fraction:
    """Convert an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(v, str):
        return Fraction(v)
    if is_exact_scalar(v):
        return Fraction(v)
    raise TypeError(f"not an exact scalar: {v!r}")


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


@dataclass(frozen=True)
class Triangle:
    """A non-degenerate triangle with vertices p1, p2, p3.

    Coordinates may be ints/Fractions (exact) or floats.  The split
    points p4..p10 are derived on demand.
    """

    p1: Point2
    p2: Point2
    p3: Point2

    def __post_init__(self):
        pts = []
        for p in (self.p1, self.p2, self.p3):
            if len(p) != 2:
                raise ValueError("points must have two coordinates")
            if not all(is_exact_scalar(c) for c in p):
                if not all(np.isfinite(float(c)) for c in p):
                    raise ValueError("triangle coordinates must be finite")
            pts.append(Point2(*p))
        object.__setattr__(self, "p1", pts[0])
        object.__setattr__(self, "p2", pts[1])
        object.__setattr__(self, "p3", pts[2])
        if self.signed_area2 == 0:
            raise ValueError("degenerate triangle")

    @property
    def exact(self) -> bool:
        return all(is_exact_scalar(c) for p in self.vertices for c in p)

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.p1, self.p2, self.p3)

    @cached_property
    def signed_area2(self):
        """Twice the signed area."""
        (x1, y1), (x2, y2), (x3, y3) = self._coords()
        return _cross(x2 - x1, y2 - y1, x3 - x1, y3 - y1)

    @property
    def area(self):
        return abs(self.signed_area2) / 2

    def _coords(self):
        conv = Fraction if self.exact else float
        return [(conv(p.x), conv(p.y)) for p in self.vertices]

    @cached_property
    def points(self) -> tuple[Point2, ...]:
        """p1..p10 as a 10-tuple."""
        verts = self._coords()
        out = []
        for b in POINT_BARY:
            if not self.exact:
                b = tuple(float(c) for c in b)
            out.append(
                Point2(
                    sum(bi * v[0] for bi, v in zip(b, verts)),
                    sum(bi * v[1] for bi, v in zip(b, verts)),
                )
            )
        return tuple(out)

    @cached_property
    def diameter(self) -> float:
        (x1, y1), (x2, y2), (x3, y3) = [(float(a), float(b)) for a, b in self.vertices]
        return max(
            np.hypot(x2 - x1, y2 - y1),
            np.hypot(x3 - x2, y3 - y2),
            np.hypot(x1 - x3, y1 - y3),
        )

    @cached_property
    def _float_inverse(self) -> np.ndarray:
        (x1, y1), (x2, y2), (x3, y3) = [(float(a), float(b)) for a, b in self.vertices]
        m = np.array([[x1, x2, x3], [y1, y2, y3], [1.0, 1.0, 1.0]])
        return np.linalg.inv(m)


REFERENCE_TRIANGLE = Triangle(Point2(0, 0), Point2(1, 0), Point2(0, 1))


def split_points(t: Triangle) -> tuple[Point2, ...]:
    return t.points


def barycentric(t: Triangle, x: Sequence) -> tuple:
    """Barycentric coordinates of ``x`` with respect to ``t``.

    Exact when both the triangle and the point are exact, float otherwise.
    """
    exact = t.exact and all(is_exact_scalar(c) for c in x)
    conv = Fraction if exact else float
    (x1, y1), (x2, y2), (x3, y3) = [(conv(a), conv(b)) for a, b in t.vertices]
    px, py = conv(x[0]), conv(x[1])
    det = _cross(x2 - x1, y2 - y1, x3 - x1, y3 - y1)
    b2 = _cross(px - x1, py - y1, x3 - x1, y3 - y1) / det
    b3 = _cross(x2 - x1, y2 - y1, px - x1, py - y1) / det
    return (1 - b2 - b3, b2, b3)


def barycentric_many(t: Triangle, xs) -> np.ndarray:
    """Float barycentric coordinates of an (n, 2) array, shape (n, 3)."""
    xs = np.asarray(xs, dtype=float).reshape(-1, 2)
    h = np.column_stack([xs, np.ones(len(xs))])
    return h @ t._float_inverse.T


def directional(t: Triangle, u: Sequence) -> tuple:
    """Directional coordinates of vector ``u``; they sum to zero."""
    exact = t.exact and all(is_exact_scalar(c) for c in u)
    conv = Fraction if exact else float
    o = barycentric(t, (conv(t.p1.x) + conv(u[0]), conv(t.p1.y) + conv(u[1])))
    return (o[0] - 1, o[1], o[2])


def cartesian(t: Triangle, beta: Sequence) -> Point2:
    """Point with barycentric coordinates ``beta`` with respect to ``t``."""
    exact = t.exact and all(is_exact_scalar(c) for c in beta)
    conv = Fraction if exact else float
    verts = [(conv(a), conv(b)) for a, b in t.vertices]
    b = [conv(c) for c in beta]
    return Point2(
        sum(bi * v[0] for bi, v in zip(b, verts)),
        sum(bi * v[1] for bi, v in zip(b, verts)),
    )


def _inv3(m):
    """Exact inverse of a 3x3 matrix given as nested sequences."""
    (a, b, c), (d, e, f), (g, h, i) = m
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ZeroDivisionError("singular 3x3 matrix")
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(v / det for v in row) for row in adj)


def frame_inverse(idx: Sequence[int]):
    """Inverse of the matrix whose columns are the barycentric coordinates
    of the given split points (0-based).  Multiplying it with a barycentric
    vector gives coordinates with respect to that point triple."""
    cols = [POINT_BARY[i] for i in idx]
    return _inv3([[cols[j][r] for j in range(3)] for r in range(3)])


def apply3(m, v):
    return tuple(m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] for r in range(3))


_SUB_INV = tuple(frame_inverse([i - 1 for i in tri]) for tri in SUBTRIANGLES)
_SUB_INV_F = np.array([[[float(v) for v in row] for row in m] for m in _SUB_INV])

#: Centroids of the subtriangles in barycentric coordinates.
SUB_CENTROIDS = tuple(
    tuple(sum(POINT_BARY[i - 1][r] for i in tri) / 3 for r in range(3)) for tri in SUBTRIANGLES
)


def locate_bary(beta: Sequence) -> int:
    """1-based subtriangle index of a point given in barycentric coordinates.

    Returns the smallest index whose closed subtriangle contains the point,
    or 0 when the point is outside the macro triangle.  Exact inputs are
    compared exactly, floats with :data:`FLOAT_TOL`.
    """
    exact = all(is_exact_scalar(c) for c in beta)
    tol = 0 if exact else FLOAT_TOL
    if min(beta) < -tol:
        return 0
    for k, m in enumerate(_SUB_INV):
        if exact:
            s = apply3(m, beta)
        else:
            s = _SUB_INV_F[k] @ np.asarray(beta, dtype=float)
        if min(s) >= -tol:
            return k + 1
    return 0


def locate_bary_many(betas: np.ndarray) -> np.ndarray:
    """Vectorized float version of :func:`locate_bary`; 0 means outside."""
    betas = np.asarray(betas, dtype=float).reshape(-1, 3)
    sub = np.einsum("kij,nj->nki", _SUB_INV_F, betas)
    inside = sub.min(axis=2) >= -FLOAT_TOL
    k = np.argmax(inside, axis=1) + 1
    k[~inside.any(axis=1)] = 0
    k[betas.min(axis=1) < -FLOAT_TOL] = 0
    return k


def locate_subtriangle(t: Triangle, x: Sequence) -> int:
    """1-based index of the split subtriangle containing ``x``.

    Raises ValueError for points outside the closed triangle.
    """
    k = locate_bary(barycentric(t, x))
    if k == 0:
        raise ValueError(f"point {tuple(x)} is outside the triangle")
    return k


def contains(t: Triangle, x: Sequence) -> bool:
    """Whether ``x`` lies in the closed triangle (tolerant in float mode)."""
    return locate_bary(barycentric(t, x)) != 0


# Symmetries of the split: permutations of the macro vertices act on the
# barycentric coordinates and hence permute p1..p10.


@dataclass(frozen=True)
class SymmetryElement:
    """A symmetry of the split as a permutation of the point indices.

    ``vertex_perm`` maps macro vertex i to ``vertex_perm[i]`` (0-based);
    ``perm[i]`` is the 0-based image of point p_{i+1}.
    """

    vertex_perm: tuple[int, int, int]
    perm: tuple[int, ...]

    @property
    def kind(self) -> str:
        p = self.vertex_perm
        if p == (0, 1, 2):
            return "identity"
        fixed = sum(p[i] == i for i in range(3))
        return "reflection" if fixed == 1 else "rotation"

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles in 1-based point labels."""
        seen, out = set(), []
        for i in range(10):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.perm[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


def _make_symmetry(vp) -> SymmetryElement:
    perm = []
    for b in POINT_BARY:
        img = [None] * 3
        for j in range(3):
            img[vp[j]] = b[j]
        perm.append(POINT_BARY.index(tuple(img)))
    return SymmetryElement(tuple(vp), tuple(perm))


SYMMETRIES: tuple[SymmetryElement, ...] = tuple(_make_symmetry(p) for p in permutations(range(3)))

#: The rotation p1 -> p2 -> p3 -> p1.
ROTATION = _make_symmetry((1, 2, 0))
#: The reflection fixing p1 and swapping p2, p3.
REFLECTION_P1 = _make_symmetry((0, 2, 1))


def compose(g: SymmetryElement, h: SymmetryElement) -> SymmetryElement:
    """g after h."""
    return _make_symmetry(tuple(g.vertex_perm[h.vertex_perm[i]] for i in range(3)))


def apply_symmetry(g: SymmetryElement, mu: Sequence[int]) -> tuple[int, ...]:
    """Image of a multiplicity vector: knot p_i moves to p_{g(i)}."""
    out = [0] * 10
    for i, m in enumerate(mu):
        out[g.perm[i]] += m
    return tuple(out)


def scalar_to_json(v):
    """Exact scalars become ``"num/den"`` strings (or integer strings)."""
    if is_exact_scalar(v):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def parse_scalar(v):
    """Parse a JSON scalar: ``"num/den"`` strings and ints are exact."""
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def triangle_to_json(t: Triangle) -> dict:
    return {f"p{i + 1}": [scalar_to_json(c) for c in p] for i, p in enumerate(t.vertices)}


def triangle_from_json(obj) -> Triangle:
    """Accepts {"p1": [x, y], ...} or a list of three points."""
    if isinstance(obj, dict):
        try:
            obj = [obj["p1"], obj["p2"], obj["p3"]]
        except KeyError as e:
            raise ValueError(f"triangle is missing {e}") from None
    pts = [Point2(*(parse_scalar(c) for c in p)) for p in obj]
    if len(pts) != 3:
        raise ValueError("a triangle needs three points")
    return Triangle(*pts)
