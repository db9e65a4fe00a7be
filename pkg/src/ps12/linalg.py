"""Small exact linear algebra over Fractions.

numpy has no rational solver and the matrices here are at most 16x16,
so plain Gauss-Jordan elimination with pivot search is enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _to_rows(a) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in a]


def solve(a, b) -> list:
    """Solve ``a x = b`` exactly.  ``b`` is a vector or a list of columns
    given as rows of a matrix (shape n x m); the result has the same shape."""
    n = len(a)
    vec = not isinstance(b[0], (list, tuple))
    rhs = [[Fraction(v)] for v in b] if vec else _to_rows(b)
    m = [row + r for row, r in zip(_to_rows(a), rhs)]
    width = len(m[0])
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = [row[n:width] for row in m]
    return [row[0] for row in out] if vec else out


def inverse(a) -> list[list[Fraction]]:
    n = len(a)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve(a, eye)


def inf_norm(a: Sequence[Sequence]) -> Fraction:
    """Maximum absolute row sum."""
    return max(sum(abs(v) for v in row) for row in a)


def matmul(a, b) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
