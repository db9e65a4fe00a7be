"""The S-bases on the 12-split and their recursion matrices.

Each basis of degree d is a list of scaled simplex splines S_j together
with a chain of recursion matrices R_1, ..., R_d whose entries are linear
polynomials.  On subtriangle k the row vector of basis values is

    e_k^T R_1(beta) R_2(beta) ... R_d(beta).

Matrix entries are stored as homogeneous linear forms a . beta with
beta1 + beta2 + beta3 = 1 used to homogenize constants.  Evaluating the
same forms at directional coordinates then gives the derivative matrices
directly.  Basis indices follow the dual polynomial ordering everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from . import _kernels
from .geometry import (
    POINT_BARY,
    SUBTRIANGLES,
    Triangle,
    barycentric,
    barycentric_many,
    is_exact_scalar,
    locate_bary,
    locate_bary_many,
    parse_scalar,
    scalar_to_json,
    triangle_from_json,
    triangle_to_json,
)
from .simplex import KnotMultiset

F = Fraction
ONE = (F(1), F(1), F(1))


def _e(i: int) -> tuple:
    return tuple(F(int(r == i - 1)) for r in range(3))


def _b(i: int, s=1) -> tuple:
    """s * beta_i."""
    return tuple(F(s) * v for v in _e(i))


def _g(i: int, s=1) -> tuple:
    """s * gamma_i where gamma_i = 2 beta_i - 1."""
    return tuple(F(s) * (2 * a - b) for a, b in zip(_e(i), ONE))


def _d(i: int, j: int, s=1) -> tuple:
    """s * (beta_i - beta_j)."""
    return tuple(F(s) * (a - b) for a, b in zip(_e(i), _e(j)))


def _s(i: int, j: int, s=1) -> tuple:
    """s * (beta_i + beta_j)."""
    return tuple(F(s) * (a + b) for a, b in zip(_e(i), _e(j)))


class LinearFormMatrix:
    """A matrix of homogeneous linear forms in three variables."""

    def __init__(self, shape: tuple[int, int], entries: dict):
        m, n = shape
        self.shape = shape
        coef = np.empty((m, n, 3), dtype=object)
        coef[...] = F(0)
        for (i, j), form in entries.items():
            coef[i - 1, j - 1, :] = [F(v) for v in form]
        self.coef = coef

    @classmethod
    def from_array(cls, coef: np.ndarray) -> "LinearFormMatrix":
        obj = cls.__new__(cls)
        obj.shape = coef.shape[:2]
        obj.coef = coef
        return obj

    @cached_property
    def coef_float(self) -> np.ndarray:
        return self.coef.astype(float)

    def __call__(self, v: Sequence) -> np.ndarray:
        """Evaluate at a 3-vector; exact (object) for exact input."""
        if all(is_exact_scalar(c) for c in v):
            return self.coef.dot(np.array([F(c) for c in v], dtype=object))
        return self.coef_float @ np.asarray(v, dtype=float)

    def times(self, t: np.ndarray) -> "LinearFormMatrix":
        """Right product with a constant matrix."""
        return LinearFormMatrix.from_array(np.einsum("ijc,jk->ikc", self.coef, t))

    def nonzero(self) -> np.ndarray:
        return np.array([[any(v != 0 for v in self.coef[i, j]) for j in range(self.shape[1])] for i in range(self.shape[0])])


R1 = LinearFormMatrix(
    (12, 10),
    {
        (1, 1): _g(1), (1, 6): _d(3, 2, 2), (1, 7): _b(2, 4),
        (2, 1): _g(1), (2, 4): _d(2, 3, 2), (2, 7): _b(3, 4),
        (3, 2): _g(2), (3, 4): _d(1, 3, 2), (3, 8): _b(3, 4),
        (4, 2): _g(2), (4, 5): _d(3, 1, 2), (4, 8): _b(1, 4),
        (5, 3): _g(3), (5, 5): _d(2, 1, 2), (5, 9): _b(1, 4),
        (6, 3): _g(3), (6, 6): _d(1, 2, 2), (6, 9): _b(2, 4),
        (7, 6): _d(3, 2, 2), (7, 7): _d(1, 3, 4), (7, 10): _g(1, -3),
        (8, 4): _d(2, 3, 2), (8, 7): _d(1, 2, 4), (8, 10): _g(1, -3),
        (9, 4): _d(1, 3, 2), (9, 8): _d(2, 1, 4), (9, 10): _g(2, -3),
        (10, 5): _d(3, 1, 2), (10, 8): _d(2, 3, 4), (10, 10): _g(2, -3),
        (11, 5): _d(2, 1, 2), (11, 9): _d(3, 2, 4), (11, 10): _g(3, -3),
        (12, 6): _d(1, 2, 2), (12, 9): _d(3, 1, 4), (12, 10): _g(3, -3),
    },
)

_h = F(1, 2)
_t = F(3, 2)
R2 = LinearFormMatrix(
    (10, 12),
    {
        (1, 1): _g(1), (1, 2): _b(2, 2), (1, 12): _b(3, 2),
        (2, 4): _b(1, 2), (2, 5): _g(2), (2, 6): _b(3, 2),
        (3, 8): _b(2, 2), (3, 9): _g(3), (3, 10): _b(1, 2),
        (4, 2): _d(1, 3), (4, 3): _b(3, 3), (4, 4): _d(2, 3),
        (5, 6): _d(2, 1), (5, 7): _b(1, 3), (5, 8): _d(3, 1),
        (6, 10): _d(3, 2), (6, 11): _b(2, 3), (6, 12): _d(1, 2),
        (7, 2): _d(1, 3, _h), (7, 3): _b(2, _t), (7, 11): _b(3, _t), (7, 12): _d(1, 2, _h),
        (8, 3): _b(1, _t), (8, 4): _d(2, 3, _h), (8, 6): _d(2, 1, _h), (8, 7): _b(3, _t),
        (9, 7): _b(2, _t), (9, 8): _d(3, 1, _h), (9, 10): _d(3, 2, _h), (9, 11): _b(1, _t),
        (10, 3): _g(3, -1), (10, 7): _g(1, -1), (10, 11): _g(2, -1),
    },
)

_3 = F(1, 3)
R3 = LinearFormMatrix(
    (12, 16),
    {
        (1, 1): _g(1), (1, 2): _b(2, 2), (1, 12): _b(3, 2),
        (2, 2): _d(1, 3), (2, 3): _b(2), (2, 13): _b(3, 2),
        (3, 3): _s(1, 2, _3), (3, 7): _b(3, _3), (3, 11): _b(3, _3),
        (3, 13): _b(1, 2 * _3), (3, 14): _b(2, 2 * _3), (3, 16): _b(3, _3),
        (4, 3): _b(1), (4, 4): _d(2, 3), (4, 14): _b(3, 2),
        (5, 4): _b(1, 2), (5, 5): _g(2), (5, 6): _b(3, 2),
        (6, 6): _d(2, 1), (6, 7): _b(3), (6, 14): _b(1, 2),
        (7, 3): _b(1, _3), (7, 7): _s(2, 3, _3), (7, 11): _b(1, _3),
        (7, 14): _b(2, 2 * _3), (7, 15): _b(3, 2 * _3), (7, 16): _b(1, _3),
        (8, 7): _b(2), (8, 8): _d(3, 1), (8, 15): _b(1, 2),
        (9, 8): _b(2, 2), (9, 9): _g(3), (9, 10): _b(1, 2),
        (10, 10): _d(3, 2), (10, 11): _b(1), (10, 15): _b(2, 2),
        (11, 3): _b(2, _3), (11, 7): _b(2, _3), (11, 11): _s(1, 3, _3),
        (11, 13): _b(1, 2 * _3), (11, 15): _b(3, 2 * _3), (11, 16): _b(2, _3),
        (12, 11): _b(3), (12, 12): _d(1, 2), (12, 13): _b(2, 2),
    },
)


def _const(n: int, entries: dict) -> np.ndarray:
    t = np.empty((n, n), dtype=object)
    t[...] = F(0)
    for i in range(n):
        t[i, i] = F(1)
    for (i, j), v in entries.items():
        t[i - 1, j - 1] = F(v)
    return t


#: Columns hold the coefficients of the alternative basis functions.
T2 = _const(12, {(3, 3): _h, (11, 3): _h, (3, 7): _h, (7, 7): _h, (7, 11): _h, (11, 11): _h})
T3 = _const(
    16,
    {
        (13, 13): F(3, 4), (14, 14): F(3, 4), (15, 15): F(3, 4),
        (13, 16): F(1, 4), (14, 16): F(1, 4), (15, 16): F(1, 4),
    },
)


@dataclass(frozen=True)
class BasisId:
    """Degree 0..3 and variant ``"standard"`` or ``"tilde"``."""

    degree: int
    variant: str = "standard"

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise ValueError(f"degree must be 0..3, got {self.degree}")
        if self.variant not in ("standard", "tilde"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "tilde" and self.degree < 2:
            raise ValueError("tilde variants exist only for degrees 2 and 3")

    @property
    def name(self) -> str:
        return f"s{self.degree}" + ("t" if self.variant == "tilde" else "")

    @classmethod
    def parse(cls, name) -> "BasisId":
        if isinstance(name, BasisId):
            return name
        name = str(name).strip().lower()
        if len(name) not in (2, 3) or name[0] != "s" or not name[1].isdigit():
            raise ValueError(f"unknown basis {name!r}")
        if len(name) == 3 and name[2] != "t":
            raise ValueError(f"unknown basis {name!r}")
        return cls(int(name[1]), "tilde" if name.endswith("t") else "standard")

    def __str__(self) -> str:
        return self.name


ALL_BASES = tuple(BasisId.parse(n) for n in ("s0", "s1", "s2", "s2t", "s3", "s3t"))


def _elements(rows):
    return tuple((F(c), KnotMultiset.parse(k)) for c, k in rows)


_S0 = tuple(
    (F(1, 8) if k < 6 else F(1, 24), KnotMultiset(tuple(int(i + 1 in tri) for i in range(10))))
    for k, tri in enumerate(SUBTRIANGLES)
)
_S1 = _elements(
    [
        ("1/4", "200101"), ("1/4", "020110"), ("1/4", "002011"),
        ("1/3", "1101000001"), ("1/3", "0110100001"), ("1/3", "1010010001"),
        ("1/3", "1001010001"), ("1/3", "0101100001"), ("1/3", "0010110001"),
        ("1/4", "0001110001"),
    ]
)
_S2_ROWS = [
    ("1/4", "300101"), ("1/2", "210101"), ("3/4", "110111"), ("1/2", "120110"),
    ("1/4", "030110"), ("1/2", "021110"), ("3/4", "011111"), ("1/2", "012011"),
    ("1/4", "003011"), ("1/2", "102011"), ("3/4", "101111"), ("1/2", "201101"),
]
_S2 = _elements(_S2_ROWS)
_S2T_ROWS = list(_S2_ROWS)
_S2T_ROWS[2] = ("3/4", "111101")
_S2T_ROWS[6] = ("3/4", "111110")
_S2T_ROWS[10] = ("3/4", "111011")
_S2T = _elements(_S2T_ROWS)
_S3_ROWS = [
    ("1/4", "400101"), ("1/2", "310101"), ("1", "221100"), ("1/2", "130110"),
    ("1/4", "040110"), ("1/2", "031110"), ("1", "122010"), ("1/2", "013011"),
    ("1/4", "004011"), ("1/2", "103011"), ("1", "212001"), ("1/2", "301101"),
    ("1", "211101"), ("1", "121110"), ("1", "112011"), ("1/4", "111111"),
]
_S3 = _elements(_S3_ROWS)
_S3T_ROWS = list(_S3_ROWS)
_S3T_ROWS[12] = ("3/4", "211101")
_S3T_ROWS[13] = ("3/4", "121110")
_S3T_ROWS[14] = ("3/4", "112011")
_S3T_ROWS[15] = ("1", "222000")
_S3T = _elements(_S3T_ROWS)

# Dual polynomials as products of c_i(y) = 1 - p_i . y (1-based indices).
_D2 = [(1, 1), (1, 4), (4, 10), (2, 4), (2, 2), (2, 5), (5, 10), (3, 5), (3, 3), (3, 6), (6, 10), (1, 6)]
_D2T = list(_D2)
_D2T[2], _D2T[6], _D2T[10] = (1, 10), (2, 10), (3, 10)
_D3 = [
    (1, 1, 1), (1, 1, 4), (1, 2, 4), (2, 2, 4), (2, 2, 2), (2, 2, 5), (2, 3, 5), (3, 3, 5),
    (3, 3, 3), (3, 3, 6), (1, 3, 6), (1, 1, 6), (1, 4, 6), (2, 4, 5), (3, 5, 6), (1, 2, 3),
]
_D3T = list(_D3)
_D3T[12:16] = [(1, 1, 10), (2, 2, 10), (3, 3, 10), (1, 2, 3)]

#: Index sets from the fast-evaluation table, for cross-checking.
TABLE_G1 = ((1, 6, 7), (1, 4, 7), (2, 4, 8), (2, 5, 8), (3, 5, 9), (3, 6, 9),
            (6, 7, 10), (4, 7, 10), (4, 8, 10), (5, 8, 10), (5, 9, 10), (6, 9, 10))
TABLE_G2 = ((1, 2, 3, 10, 11, 12), (1, 2, 3, 4, 11, 12), (2, 3, 4, 5, 6, 7), (3, 4, 5, 6, 7, 8),
            (6, 7, 8, 9, 10, 11), (7, 8, 9, 10, 11, 12), (2, 3, 7, 10, 11, 12), (2, 3, 4, 7, 11, 12),
            (2, 3, 4, 6, 7, 11), (3, 4, 6, 7, 8, 11), (3, 6, 7, 8, 10, 11), (3, 7, 8, 10, 11, 12))
TABLE_G3_BAR = ((1, 2, 10, 12), (1, 2, 4, 12), (2, 4, 5, 6), (4, 5, 6, 8), (6, 8, 9, 10),
                (8, 9, 10, 12), (2, 10, 12), (2, 4, 12), (2, 4, 6), (4, 6, 8), (6, 8, 10), (8, 10, 12))
TABLE_G3_COMMON = (3, 7, 11, 13, 14, 15, 16)


@dataclass
class BasisSpec:
    """Constant data describing one S-basis."""

    id: BasisId
    elements: tuple
    dual: tuple
    chain: tuple
    stage_sets: tuple = field(default=())

    @property
    def degree(self) -> int:
        return self.id.degree

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def index_sets(self) -> tuple[tuple[int, ...], ...]:
        """G_d^k for k = 1..12 as 1-based basis indices."""
        return tuple(tuple(j + 1 for j in g) for g in self.stage_sets[-1])

    @cached_property
    def packed(self):
        """Float blocks for the batch kernel."""
        d = self.degree
        width = max(len(g) for stage in self.stage_sets for g in stage)
        coef = np.zeros((d, 12, width, width, 3))
        nrows = np.zeros((max(d, 1), 12), dtype=np.int64)
        ncols = np.zeros((max(d, 1), 12), dtype=np.int64)
        cols = np.zeros((12, width), dtype=np.int64)
        for k in range(12):
            for s in range(d):
                rows, cs = self.stage_sets[s][k], self.stage_sets[s + 1][k]
                blk = self.chain[s].coef_float[np.ix_(rows, cs)]
                coef[s, k, : len(rows), : len(cs)] = blk
                nrows[s, k], ncols[s, k] = len(rows), len(cs)
            last = self.stage_sets[d][k]
            cols[k, : len(last)] = last
        return coef, nrows, ncols, cols

    @cached_property
    def exact_blocks(self):
        """Exact blocks: blocks[k][s] is a list of rows of forms (or None)."""
        out = []
        for k in range(12):
            per = []
            for s in range(self.degree):
                rows, cs = self.stage_sets[s][k], self.stage_sets[s + 1][k]
                c = self.chain[s].coef
                per.append(
                    [[tuple(c[i, j]) if any(v != 0 for v in c[i, j]) else None for j in cs] for i in rows]
                )
            out.append(per)
        return out


_SAMPLE_SUB = ((F(2, 7), F(3, 11)), (F(1, 5), F(5, 13)), (F(3, 8), F(1, 9)), (F(4, 17), F(6, 19)))


def _sample_points(k: int) -> list[tuple]:
    tri = [POINT_BARY[i - 1] for i in SUBTRIANGLES[k]]
    pts = []
    for a, b in _SAMPLE_SUB:
        lam = (1 - a - b, a, b)
        pts.append(tuple(sum(lam[v] * tri[v][r] for v in range(3)) for r in range(3)))
    return pts


def _compute_stage_sets(chain) -> tuple:
    """Column supports of the partial products on each subtriangle."""
    stages = [tuple((k,) for k in range(12))]
    for s in range(1, len(chain) + 1):
        sets = []
        for k in range(12):
            nz = np.zeros(chain[s - 1].shape[1], dtype=bool)
            for beta in _sample_points(k):
                v = np.array([F(int(i == k)) for i in range(12)], dtype=object)
                for m in chain[:s]:
                    v = v.dot(m(beta))
                nz |= np.array([x != 0 for x in v])
            sets.append(tuple(int(j) for j in np.nonzero(nz)[0]))
        stages.append(tuple(sets))
    return tuple(stages)


def _chain_for(bid: BasisId) -> tuple:
    if bid.degree == 0:
        return ()
    if bid.degree == 1:
        return (R1,)
    if bid.degree == 2:
        return (R1, R2) if bid.variant == "standard" else (R1, R2.times(T2))
    return (R1, R2, R3) if bid.variant == "standard" else (R1, R2, R3.times(T3))


@lru_cache(maxsize=None)
def get_basis(bid) -> BasisSpec:
    bid = BasisId.parse(bid)
    elements = {
        "s0": _S0, "s1": _S1, "s2": _S2, "s2t": _S2T, "s3": _S3, "s3t": _S3T,
    }[bid.name]
    dual = {
        "s0": tuple(() for _ in range(12)),
        "s1": tuple((i,) for i in range(1, 11)),
        "s2": tuple(_D2), "s2t": tuple(_D2T), "s3": tuple(_D3), "s3t": tuple(_D3T),
    }[bid.name]
    chain = _chain_for(bid)
    return BasisSpec(bid, elements, dual, chain, _compute_stage_sets(chain))


def recursion_matrices(d: int, variant: str = "standard") -> tuple[LinearFormMatrix, ...]:
    """(R_1, ..., R_d) with the tilde transform folded into the last one."""
    return _chain_for(BasisId(d, variant))


def basis_dimension(d: int) -> int:
    """Dimension n_d of the C^{d-1} spline space: 12, 10, then d^2/2 + 3d/2 + 7."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d < 2:
        return (12, 10)[d]
    return (d * d + 3 * d) // 2 + 7


def support(basis, j: int) -> tuple[int, ...]:
    """Subtriangles (1-based) on which S_j is not identically zero."""
    spec = get_basis(basis)
    return tuple(k + 1 for k, g in enumerate(spec.index_sets) if j in g)


def _exact(v) -> bool:
    return all(is_exact_scalar(c) for c in v)


def chain_point(spec: BasisSpec, k: int, args: Sequence[Sequence]) -> tuple[tuple[int, ...], list]:
    """Sparse chain product on 0-based subtriangle ``k``.

    ``args[s]`` is the argument of stage s + 1 (barycentric or directional
    coordinates).  Returns (0-based global indices, values).
    """
    exact = all(_exact(a) for a in args)
    zero = F(0) if exact else 0.0
    if exact:
        args = [tuple(F(c) for c in a) for a in args]
    else:
        args = [tuple(float(c) for c in a) for a in args]
    v = [F(1) if exact else 1.0]
    for s, block in enumerate(spec.exact_blocks[k]):
        a = args[s]
        ncol = len(block[0])
        w = [zero] * ncol
        for i, row in enumerate(block):
            vi = v[i]
            if vi == 0:
                continue
            for j, form in enumerate(row):
                if form is not None:
                    w[j] += vi * (form[0] * a[0] + form[1] * a[1] + form[2] * a[2])
        v = w
    return spec.stage_sets[-1][k], v


def eval_basis_fast(basis, k: int, beta) -> tuple[tuple[int, ...], list]:
    """Nonzero part of the basis on subtriangle ``k`` (1-based).

    Returns the 1-based indices G_d^k and the values there.
    """
    spec = get_basis(basis)
    g, v = chain_point(spec, k - 1, [beta] * spec.degree)
    return tuple(j + 1 for j in g), v


def eval_basis_bary(basis, beta) -> list:
    """All basis values at a barycentric point (zeros outside Δ)."""
    spec = get_basis(basis)
    exact = _exact(beta)
    zero = F(0) if exact else 0.0
    out = [zero] * spec.size
    k = locate_bary(beta)
    if k == 0:
        return out
    g, v = chain_point(spec, k - 1, [beta] * spec.degree)
    for j, val in zip(g, v):
        out[j] = val
    return out


def eval_basis_dense(basis, beta) -> list:
    """Basis values from the full matrix product (no index sets)."""
    spec = get_basis(basis)
    exact = _exact(beta)
    k = locate_bary(beta)
    if k == 0:
        return [F(0) if exact else 0.0] * spec.size
    v = np.array([F(int(i == k - 1)) if exact else float(i == k - 1) for i in range(12)], dtype=object if exact else float)
    for m in spec.chain:
        v = v.dot(m(beta))
    return list(v)


def eval_basis(basis, t: Triangle, x) -> list:
    """Values of all basis functions at ``x`` (exact for exact input)."""
    return eval_basis_bary(basis, barycentric(t, x))


def chain_many(spec: BasisSpec, loc: np.ndarray, args: np.ndarray, use_numba=None) -> np.ndarray:
    """Batch float chain product; ``loc`` is 1-based (0 = outside)."""
    coef, nrows, ncols, cols = spec.packed
    return _kernels.chain_product(coef, nrows, ncols, cols, np.asarray(loc) - 1, args, spec.size, use_numba)


def eval_basis_many_bary(basis, betas, use_numba=None) -> np.ndarray:
    spec = get_basis(basis)
    betas = np.asarray(betas, dtype=float).reshape(-1, 3)
    loc = locate_bary_many(betas)
    args = np.broadcast_to(betas, (spec.degree,) + betas.shape)
    return chain_many(spec, loc, args, use_numba)


def eval_basis_many(basis, t: Triangle, xs, use_numba=None) -> np.ndarray:
    """Float basis values at many points, shape (n_points, n_d)."""
    return eval_basis_many_bary(basis, barycentric_many(t, xs), use_numba)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def dual_expansion(basis, j: int) -> dict:
    """Dual polynomial Psi_j as a polynomial in (c_1, c_2, c_3).

    Each factor c_i is the affine combination of c_1, c_2, c_3 with the
    barycentric weights of p_i.  Keys are exponent triples.
    """
    spec = get_basis(basis)
    p = {(0, 0, 0): F(1)}
    for i in spec.dual[j - 1]:
        b = POINT_BARY[i - 1]
        p = _poly_mul(p, {_e_exp(r): b[r] for r in range(3) if b[r] != 0})
    return p


def _e_exp(r: int) -> tuple:
    return tuple(int(s == r) for s in range(3))


def bernstein_coeffs(basis, index: Sequence[int]) -> list[Fraction]:
    """Coefficients of the Bernstein polynomial B_index in the basis.

    B_i(beta) = d!/(i1! i2! i3!) beta^i.  The coefficient of S_j is the
    coefficient of c^i in the dual polynomial Psi_j.
    """
    spec = get_basis(basis)
    index = tuple(index)
    if len(index) != 3 or sum(index) != spec.degree or min(index) < 0:
        raise ValueError(f"Bernstein index must be a triple summing to {spec.degree}")
    if spec.degree == 0:
        return [F(1)] * spec.size
    return [dual_expansion(basis, j).get(index, F(0)) for j in range(1, spec.size + 1)]


def bernstein_value(index: Sequence[int], beta):
    d = sum(index)
    c = factorial(d)
    for i in index:
        c //= factorial(i)
    v = c
    for b, i in zip(beta, index):
        v = v * b**i
    return v


@dataclass
class SplineFunction:
    """A spline sum_j c_j S_j on a triangle."""

    basis: BasisId
    coeffs: list
    triangle: Triangle

    def __post_init__(self):
        self.basis = BasisId.parse(self.basis)
        n = get_basis(self.basis).size
        if len(self.coeffs) != n:
            raise ValueError(f"{self.basis.name} needs {n} coefficients, got {len(self.coeffs)}")

    @property
    def exact(self) -> bool:
        return self.triangle.exact and all(is_exact_scalar(c) for c in self.coeffs)

    def __call__(self, x):
        return eval_spline(self, x)

    def eval_many(self, xs, use_numba=None) -> np.ndarray:
        vals = eval_basis_many(self.basis, self.triangle, xs, use_numba)
        return vals @ np.asarray([float(c) for c in self.coeffs])

    def to_json(self) -> dict:
        return {
            "degree": self.basis.degree,
            "variant": self.basis.variant,
            "coeffs": [scalar_to_json(c) for c in self.coeffs],
            "triangle": triangle_to_json(self.triangle),
        }

    @classmethod
    def from_json(cls, obj) -> "SplineFunction":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if "basis" in obj:
            bid = BasisId.parse(obj["basis"])
        else:
            bid = BasisId(int(obj["degree"]), obj.get("variant", "standard"))
        return cls(bid, [parse_scalar(c) for c in obj["coeffs"]], triangle_from_json(obj["triangle"]))


def eval_spline(f: SplineFunction, x):
    """Value of a spline at ``x`` via the fast path."""
    beta = barycentric(f.triangle, x)
    exact = _exact(beta) and all(is_exact_scalar(c) for c in f.coeffs)
    if not exact:
        beta = tuple(float(b) for b in beta)
    k = locate_bary(beta)
    if k == 0:
        return F(0) if exact else 0.0
    spec = get_basis(f.basis)
    g, v = chain_point(spec, k - 1, [beta] * spec.degree)
    if exact:
        return sum((F(f.coeffs[j]) * val for j, val in zip(g, v)), F(0))
    return float(sum(float(f.coeffs[j]) * val for j, val in zip(g, v)))
