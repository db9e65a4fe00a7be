import os
import subprocess
import sys

import numpy as np
import pytest

from ps12 import _kernels
from ps12.calculus import eval_derivatives_many
from ps12.geometry import Point2, Triangle
from ps12.sbasis import ALL_BASES, eval_basis_many, eval_basis_many_bary

BASES = [b.name for b in ALL_BASES]
needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _points(n, seed=0):
    rng = np.random.default_rng(seed)
    b = rng.dirichlet((1, 1, 1), size=n)
    # a few points outside and on vertices
    extra = np.array([[1.2, -0.1, -0.1], [1, 0, 0], [0.5, 0.5, 0], [1 / 3, 1 / 3, 1 / 3]])
    return np.vstack([b, extra])


@needs_numba
@pytest.mark.parametrize("basis", BASES)
def test_numba_matches_numpy(basis):
    betas = _points(500)
    a = eval_basis_many_bary(basis, betas, use_numba=True)
    b = eval_basis_many_bary(basis, betas, use_numba=False)
    assert np.allclose(a, b, atol=1e-14, rtol=0)
    assert not a[-4].any()


@needs_numba
def test_numba_matches_numpy_derivatives():
    t = Triangle(Point2(0.0, 0.0), Point2(1.4, 0.3), Point2(0.2, 1.1))
    xs = _points(200, 1)[:200] @ np.array([t.p1, t.p2, t.p3], dtype=float)
    for basis in ("s2t", "s3"):
        dirs = [(1.0, 0.0), (0.3, -0.7)]
        a = eval_derivatives_many(basis, t, xs, dirs, use_numba=True)
        b = eval_derivatives_many(basis, t, xs, dirs, use_numba=False)
        assert np.allclose(a, b, atol=1e-11, rtol=0)


def test_empty_input():
    t = Triangle(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.0, 1.0))
    for flag in (False, _kernels.HAVE_NUMBA):
        assert eval_basis_many("s3", t, np.zeros((0, 2)), use_numba=flag).shape == (0, 16)


def test_env_flag_selects_fallback():
    code = "from ps12 import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, PS12_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
    env["PS12_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str(_kernels.HAVE_NUMBA)
