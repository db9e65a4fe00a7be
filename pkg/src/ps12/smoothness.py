"""C^0, C^1 and C^2 joins of cubic S-splines across a shared edge.

F lives on [p1, p2, p3] and F_hat on [p1, p2, q] with the pulled-back
basis, so that F_hat is simply an s3 spline on the second triangle.  Both
coefficient vectors are written in sigma order, which sorts the basis by
the number of knots off the edge [p1, p2]; then C^r smoothness fixes the
first 5, 9 or 12 entries of c_hat in terms of c and the barycentric
coordinates of q with respect to the first triangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .calculus import SIGMA, eval_derivatives
from .geometry import Point2, Triangle, barycentric, contains
from .sbasis import BasisId, SplineFunction, eval_spline

#: Number of forced entries of c_hat for r = 0, 1, 2.
FORCED = {0: 5, 1: 9, 2: 12}


def sigma_reorder(c: Sequence) -> list:
    """Standard order to sigma order: out[i] = c[sigma_i]."""
    if len(c) != 16:
        raise ValueError("sigma reordering needs 16 coefficients")
    return [c[s - 1] for s in SIGMA]


def sigma_inverse(c_sigma: Sequence) -> list:
    """Sigma order back to standard order."""
    if len(c_sigma) != 16:
        raise ValueError("sigma reordering needs 16 coefficients")
    out = [None] * 16
    for i, s in enumerate(SIGMA):
        out[s - 1] = c_sigma[i]
    return out


@dataclass(frozen=True)
class JoinConfiguration:
    """Left triangle [p1, p2, p3], apex q of the right triangle [p1, p2, q]
    and the smoothness order r."""

    left: Triangle
    apex: Point2
    order: int = 2

    def __post_init__(self):
        if self.order not in (0, 1, 2):
            raise ValueError("join order must be 0, 1 or 2")
        object.__setattr__(self, "apex", Point2(*self.apex))
        # raises for a degenerate right triangle
        self.right

    @property
    def right(self) -> Triangle:
        return Triangle(self.left.p1, self.left.p2, self.apex)

    @property
    def beta(self) -> tuple:
        return barycentric(self.left, self.apex)


def join_map(cfg: JoinConfiguration, c: Sequence) -> list:
    """Entries of c_hat forced by C^r smoothness, in sigma order.

    ``c`` is the sigma-ordered coefficient vector of F.  The result has
    16 entries; those left free by the join are None.
    """
    if len(c) != 16:
        raise ValueError("join_map needs 16 coefficients")
    b1, b2, b3 = cfg.beta
    c = [None] + list(c)  # 1-based like the formulas
    h = [None] * 17
    for i in range(1, 6):
        h[i] = c[i]
    if cfg.order >= 1:
        h[6] = b1 * c[1] + b2 * c[2] + b3 * c[6]
        h[7] = b1 * c[2] + b2 * (c[2] + c[3]) / 2 + b3 * c[7]
        h[8] = b2 * c[4] + b1 * (c[3] + c[4]) / 2 + b3 * c[8]
        h[9] = b1 * c[4] + b2 * c[5] + b3 * c[9]
    if cfg.order >= 2:
        h[10] = (
            b1 * b2 * (3 * c[2] - c[1])
            + b1 * b3 * (3 * c[6] - c[1])
            + b2 * b3 * (4 * c[7] - c[2] - c[6])
            + b1 * b1 * c[1]
            + b2 * b2 * c[3]
            + b3 * b3 * c[10]
        )
        h[12] = (
            b1 * b2 * (3 * c[4] - c[5])
            + b2 * b3 * (3 * c[9] - c[5])
            + b1 * b3 * (4 * c[8] - c[4] - c[9])
            + b1 * b1 * c[3]
            + b2 * b2 * c[5]
            + b3 * b3 * c[12]
        )
        h[11] = (
            b1 * b2 * (c[1] - 2 * c[2] + 4 * c[3] - 2 * c[4] + c[5])
            + b3 * b3 * c[11]
            + b1 * b3 * (c[1] - 2 * c[2] + c[3] - 3 * c[6] + 6 * c[7] - 2 * c[8] + c[9])
            + b2 * b2 * (2 * c[4] - c[5])
            + b2 * b3 * (c[3] - 2 * c[4] + c[5] - 3 * c[9] + 6 * c[8] - 2 * c[7] + c[6])
            + b1 * b1 * (2 * c[2] - c[1])
        )
    return h[1:]


def complete_join(cfg: JoinConfiguration, c: Sequence, free: Sequence) -> list:
    """Full sigma-ordered c_hat: the forced entries plus ``free`` values
    for the remaining ones (in increasing index order)."""
    forced = join_map(cfg, c)
    need = 16 - FORCED[cfg.order]
    if len(free) != need:
        raise ValueError(f"order {cfg.order} leaves {need} free coefficients, got {len(free)}")
    it = iter(free)
    return [v if v is not None else next(it) for v in forced]


def spline_pair(cfg: JoinConfiguration, c: Sequence, c_hat: Sequence) -> tuple[SplineFunction, SplineFunction]:
    """(F, F_hat) as standard-order s3 splines from sigma-ordered vectors."""
    return (
        SplineFunction(BasisId(3), sigma_inverse(c), cfg.left),
        SplineFunction(BasisId(3), sigma_inverse(c_hat), cfg.right),
    )


def _edge_points(t: Triangle, samples: int) -> list:
    p1 = [float(v) for v in t.p1]
    p2 = [float(v) for v in t.p2]
    out = []
    for i in range(samples):
        s = (i + 0.5) / samples
        out.append((p1[0] + s * (p2[0] - p1[0]), p1[1] + s * (p2[1] - p1[1])))
    return out


def _directional_values(f: SplineFunction, x, u, k: int) -> float:
    vals = eval_derivatives(f.basis, f.triangle, x, [u] * k)
    return sum(float(c) * float(v) for c, v in zip(f.coeffs, vals))


def verify_join(F: SplineFunction, F_hat: SplineFunction, r: int, samples: int = 50) -> list[float]:
    """Largest |D_u^k F - D_u^k F_hat| on the shared edge for k = 0..r.

    u = q - p1 points into the right triangle.  The sample parameters
    (i + 1/2)/samples avoid the edge midpoint.
    """
    t, th = F.triangle, F_hat.triangle
    if (t.p1, t.p2) != (th.p1, th.p2):
        raise ValueError("the triangles must share the edge [p1, p2]")
    u = (float(th.p3.x) - float(t.p1.x), float(th.p3.y) - float(t.p1.y))
    res = []
    pts = _edge_points(t, samples)
    for k in range(r + 1):
        res.append(max(abs(_directional_values(F, x, u, k) - _directional_values(F_hat, x, u, k)) for x in pts))
    return res


def joined_patch_eval(cfg: JoinConfiguration, c: Sequence, c_hat: Sequence, x):
    """Evaluate the joined patch: F on the left triangle, F_hat on the right.

    Both vectors are in sigma order.  Points on the shared edge use F.
    """
    f, fh = spline_pair(cfg, c, c_hat)
    if contains(cfg.left, x):
        return eval_spline(f, x)
    if contains(cfg.right, x):
        return eval_spline(fh, x)
    raise ValueError("point lies outside both triangles")
