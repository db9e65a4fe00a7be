from fractions import Fraction as F
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ps12.calculus import eval_derivatives
from ps12.geometry import Point2, Triangle
from ps12.marsden import qi_apply
from ps12.smoothness import (
    FORCED,
    JoinConfiguration,
    complete_join,
    join_map,
    joined_patch_eval,
    sigma_inverse,
    sigma_reorder,
    spline_pair,
    verify_join,
)

LEFT = Triangle(Point2(F(0), F(0)), Point2(F(2), F(0)), Point2(F(1, 2), F(3, 2)))
APEX = Point2(F(6, 5), F(-7, 4))


def _coeffs(seed, n=16):
    rng = random.Random(seed)
    return [F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)]


def test_sigma_reorder():
    e1 = [1] + [0] * 15
    assert sigma_reorder(e1) == e1
    e12 = [int(j == 11) for j in range(16)]
    assert sigma_reorder(e12).index(1) == 5
    c = list(range(16))
    assert sigma_inverse(sigma_reorder(c)) == c
    with pytest.raises(ValueError):
        sigma_reorder([1, 2])


def test_c0_block():
    c = _coeffs(0)
    h = join_map(JoinConfiguration(LEFT, APEX, 0), c)
    assert h[:5] == c[:5] and all(v is None for v in h[5:])


def test_c1_example():
    cfg = JoinConfiguration(LEFT, APEX, 1)
    b1, b2, b3 = cfg.beta
    c = _coeffs(1)
    h = join_map(cfg, c)
    assert h[5] == b1 * c[0] + b2 * c[1] + b3 * c[5]
    assert sum(v is not None for v in h) == FORCED[1]


def test_identity_when_triangles_coincide():
    c = _coeffs(2)
    h = join_map(JoinConfiguration(LEFT, LEFT.p3, 2), c)
    assert h[:12] == c[:12]


def test_invalid_configurations():
    with pytest.raises(ValueError):
        JoinConfiguration(LEFT, APEX, 3)
    with pytest.raises(ValueError):
        JoinConfiguration(LEFT, Point2(F(1), F(0)), 2)
    with pytest.raises(ValueError):
        complete_join(JoinConfiguration(LEFT, APEX, 2), _coeffs(0), [0, 0])


def _solve_join_exactly(cfg, c, free):
    """Forced entries from the smoothness conditions, solved with sympy."""
    r = cfg.order
    nf = FORCED[r]
    u = (cfg.apex.x - LEFT.p1.x, cfg.apex.y - LEFT.p1.y)
    std_c = sigma_inverse(c)
    rows, rhs = [], []
    for k in range(r + 1):
        for s in (F(1, 8), F(3, 8), F(5, 8), F(7, 8), F(1, 16), F(15, 16)):
            x = (LEFT.p1.x + s * (LEFT.p2.x - LEFT.p1.x), LEFT.p1.y + s * (LEFT.p2.y - LEFT.p1.y))
            left = sum(a * b for a, b in zip(std_c, eval_derivatives("s3", LEFT, x, [u] * k)))
            right = sigma_reorder(eval_derivatives("s3", cfg.right, x, [u] * k))
            rows.append(right[:nf])
            rhs.append(left - sum(a * b for a, b in zip(free, right[nf:])))
    a = sympy.Matrix(rows)
    sol, params = a.gauss_jordan_solve(sympy.Matrix(rhs))
    assert params.shape[0] == 0
    return [F(str(v)) for v in sol]


@pytest.mark.parametrize("order", [0, 1, 2])
@pytest.mark.parametrize("seed", [0, 1])
def test_join_map_matches_linear_solve(order, seed):
    rng = random.Random(seed)
    apex = Point2(F(rng.randint(-10, 30), 10), F(rng.randint(-30, -5), 10))
    cfg = JoinConfiguration(LEFT, apex, order)
    c = _coeffs(seed + 10)
    free = _coeffs(seed + 20, 16 - FORCED[order])
    assert join_map(cfg, c)[: FORCED[order]] == _solve_join_exactly(cfg, c, free)


def _float_case(seed):
    rng = random.Random(seed)
    left = Triangle(Point2(0.0, 0.0), Point2(1.5, 0.3), Point2(0.4, 1.2))
    apex = (rng.uniform(0.2, 1.2), rng.uniform(-1.5, -0.5))
    c = [rng.uniform(-1, 1) for _ in range(16)]
    return left, apex, c


@given(st.integers(0, 10**6))
def test_join_residuals_small(seed):
    left, apex, c = _float_case(seed)
    cfg = JoinConfiguration(left, apex, 2)
    ch = complete_join(cfg, c, [0.1, -0.2, 0.3, 0.4])
    assert max(verify_join(*spline_pair(cfg, c, ch), 2, 20)) <= 1e-10


def test_perturbation_detected():
    left, apex, c = _float_case(3)
    cfg = JoinConfiguration(left, apex, 2)
    ch = complete_join(cfg, c, [0, 0, 0, 0])
    ch[5] += 1.0
    res = verify_join(*spline_pair(cfg, c, ch), 2, 50)
    assert res[0] < 1e-10 and res[1] > 0.01


def test_same_polynomial_both_sides():
    left = Triangle(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.3, 0.8))
    right = Triangle(left.p1, left.p2, Point2(0.6, -0.9))
    poly = lambda x: x[0] ** 3 - 2 * x[0] * x[1] + x[1] ** 2 - 1
    f, fh = qi_apply("s3", left, poly), qi_apply("s3", right, poly)
    assert max(verify_join(f, fh, 2, 30)) < 1e-12


def test_mirror_apex():
    left, _, c = _float_case(4)
    # reflect p3 across the line through p1 and p2
    (x1, y1), (x2, y2), (x3, y3) = left.vertices
    dx, dy = x2 - x1, y2 - y1
    s = ((x3 - x1) * dx + (y3 - y1) * dy) / (dx * dx + dy * dy)
    foot = (x1 + s * dx, y1 + s * dy)
    apex = (2 * foot[0] - x3, 2 * foot[1] - y3)
    cfg = JoinConfiguration(left, apex, 2)
    assert min(cfg.beta) < 0
    ch = complete_join(cfg, c, [0, 0, 0, 0])
    assert max(verify_join(*spline_pair(cfg, c, ch), 2, 50)) <= 1e-10


def test_join_back_reproduces_forced_entries():
    cfg = JoinConfiguration(LEFT, APEX, 2)
    c = _coeffs(7)
    ch = complete_join(cfg, c, _coeffs(8, 4))
    back = JoinConfiguration(cfg.right, LEFT.p3, 2)
    assert join_map(back, ch)[:12] == c[:12]


def test_joined_patch_eval():
    cfg = JoinConfiguration(LEFT, APEX, 2)
    ones = [F(1)] * 16
    assert joined_patch_eval(cfg, ones, ones, (F(1), F(1, 2))) == 1
    assert joined_patch_eval(cfg, ones, ones, (F(1), F(-1, 2))) == 1
    c = _coeffs(9)
    ch = complete_join(cfg, c, _coeffs(10, 4))
    # S_9 is the only cubic basis function that is 1 at p3; it sits at sigma position 16
    assert joined_patch_eval(cfg, c, ch, APEX) == ch[15]
    edge_pt = (F(3, 5), F(0))
    f, fh = spline_pair(cfg, c, ch)
    assert f(edge_pt) == fh(edge_pt)
    with pytest.raises(ValueError):
        joined_patch_eval(cfg, c, ch, (F(10), F(10)))
