"""Batch float kernels for the recursion-matrix chain.

Evaluating an S-basis (or one of its derivatives) at a point in subtriangle
k is a product e_k^T A_1 A_2 ... A_s of small matrices whose entries are
linear forms evaluated at a per-stage argument.  The blocks are packed as

    coef[s, k, i, j, :]   linear-form coefficients of block entry (i, j)
    nrows[s, k], ncols[s, k]
    cols[k, j]            global basis index of local column j at the end

The numba kernel loops over points; the numpy fallback groups points by
subtriangle and uses einsum.  Set ``PS12_NUMBA=0`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PS12_NUMBA", "1").lower() not in ("0", "false", "no", "off")


def chain_numpy(coef, nrows, ncols, cols, loc, args, out):
    """Pure numpy chain product; ``loc`` holds 0-based subtriangles (-1 = outside)."""
    n_stage = coef.shape[0]
    for k in range(cols.shape[0]):
        idx = np.nonzero(loc == k)[0]
        if idx.size == 0:
            continue
        v = np.ones((idx.size, 1))
        m = 1
        for s in range(n_stage):
            n = ncols[s, k]
            block = np.einsum("ijc,pc->pij", coef[s, k, :m, :n], args[s, idx])
            v = np.einsum("pi,pij->pj", v, block)
            m = n
        out[idx[:, None], cols[k, :m][None, :]] = v
    return out


def _chain_loop(coef, nrows, ncols, cols, loc, args, out):
    n_stage = coef.shape[0]
    width = cols.shape[1]
    v = np.empty(width)
    w = np.empty(width)
    for p in range(loc.shape[0]):
        k = loc[p]
        if k < 0:
            continue
        v[0] = 1.0
        m = 1
        for s in range(n_stage):
            a0 = args[s, p, 0]
            a1 = args[s, p, 1]
            a2 = args[s, p, 2]
            n = ncols[s, k]
            for j in range(n):
                acc = 0.0
                for i in range(m):
                    acc += v[i] * (
                        coef[s, k, i, j, 0] * a0 + coef[s, k, i, j, 1] * a1 + coef[s, k, i, j, 2] * a2
                    )
                w[j] = acc
            for j in range(n):
                v[j] = w[j]
            m = n
        for j in range(m):
            out[p, cols[k, j]] = v[j]
    return out


if HAVE_NUMBA:
    _chain_numba = njit(cache=True)(_chain_loop)
else:  # pragma: no cover
    _chain_numba = None


def chain_product(coef, nrows, ncols, cols, loc, args, n_out, use_numba=None):
    """Evaluate the chain for all points; returns an (n_points, n_out) array."""
    loc = np.ascontiguousarray(loc, dtype=np.int64)
    args = np.ascontiguousarray(args, dtype=np.float64)
    out = np.zeros((loc.shape[0], n_out))
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not installed")
        return _chain_numba(coef, nrows, ncols, cols, loc, args, out)
    return chain_numpy(coef, nrows, ncols, cols, loc, args, out)
