from fractions import Fraction as F
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ps12.geometry import POINT_BARY, SYMMETRIES, Point2, Triangle, apply_symmetry, cartesian
from ps12.sbasis import (
    ALL_BASES,
    R1,
    R3,
    T2,
    T3,
    BasisId,
    SplineFunction,
    basis_dimension,
    bernstein_coeffs,
    eval_basis,
    eval_basis_bary,
    eval_basis_dense,
    eval_basis_fast,
    eval_basis_many_bary,
    eval_spline,
    get_basis,
    recursion_matrices,
    support,
)

from conftest import interior_points

BASES = [b.name for b in ALL_BASES]


def test_matrix_entries():
    assert tuple(R1.coef[0, 0]) == (1, -1, -1)  # gamma_1
    assert tuple(R1.coef[0, 5]) == (0, -2, 2)  # 2 beta_{3,2}
    assert tuple(R1.coef[0, 6]) == (0, 4, 0)
    assert tuple(R3.coef[2, 6]) == (0, 0, F(1, 3))
    assert [m.shape for m in recursion_matrices(3)] == [(12, 10), (10, 12), (12, 16)]


def test_transformation_blocks():
    idx = [2, 6, 10]
    assert T2[np.ix_(idx, idx)].tolist() == [[F(1, 2), F(1, 2), 0], [0, F(1, 2), F(1, 2)], [F(1, 2), 0, F(1, 2)]]
    idx = [12, 13, 14, 15]
    assert T3[np.ix_(idx, idx)].T.tolist()[3] == [F(1, 4)] * 3 + [1]


def test_tilde_needs_degree_two_or_three():
    with pytest.raises(ValueError):
        BasisId(1, "tilde")
    assert BasisId.parse("s3t") == BasisId(3, "tilde")


def test_dimensions():
    assert [basis_dimension(d) for d in range(4)] == [12, 10, 12, 16]
    assert basis_dimension(5) == 27
    assert [get_basis(b).size for b in BASES] == [12, 10, 12, 12, 16, 16]


def test_degree_zero_is_indicator():
    beta = tuple(sum(POINT_BARY[i - 1][r] for i in (2, 4, 8)) / 3 for r in range(3))
    assert eval_basis_bary("s0", beta) == [int(j == 2) for j in range(12)]


def test_cubic_corner_value(unit_triangle):
    v = eval_basis("s3", unit_triangle, unit_triangle.p1)
    assert v == [1] + [0] * 15


@pytest.mark.parametrize("basis", BASES)
@given(beta=interior_points())
def test_partition_of_unity_exact(basis, beta):
    v = eval_basis_bary(basis, beta)
    assert sum(v) == 1
    assert min(v) >= 0


@pytest.mark.parametrize("basis", BASES)
@given(beta=interior_points())
def test_fast_equals_dense(basis, beta):
    assert eval_basis_bary(basis, beta) == eval_basis_dense(basis, beta)


def test_outside_gives_zero(unit_triangle):
    assert eval_basis("s2", unit_triangle, (F(1), F(1))) == [0] * 12


def test_index_set_examples():
    assert get_basis("s2").index_sets[0] == (1, 2, 3, 10, 11, 12)
    assert get_basis("s1").index_sets[0] == (1, 6, 7)
    assert get_basis("s2t").index_sets[0] == (1, 2, 3, 7, 10, 11, 12)


@pytest.mark.parametrize("basis", BASES)
@given(data=st.data())
def test_values_vanish_outside_index_set(basis, data):
    k = data.draw(st.integers(1, 12))
    beta = data.draw(interior_points(k))
    g, _ = eval_basis_fast(basis, k, beta)
    v = eval_basis_bary(basis, beta)
    assert all(v[j] == 0 for j in range(len(v)) if j + 1 not in g)


def test_supports():
    s3 = get_basis("s3")
    assert sum(1 for j in range(1, 17) if 1 in support("s3", j)) == 11
    assert sum(1 for j in range(1, 17) if 7 in support("s3", j)) == 10
    for k in range(1, 13):
        assert sum(1 for j in range(1, 13) if k in support("s2", j)) == 6
        assert sum(1 for j in range(1, 11) if k in support("s1", j)) == 3
    assert len(s3.index_sets) == 12


def test_bernstein_coeffs():
    c = bernstein_coeffs("s3", (1, 1, 1))
    assert c == [0] * 12 + [F(1, 4)] * 3 + [1]
    c = bernstein_coeffs("s3", (3, 0, 0))
    assert c[:3] == [1, F(1, 2), 0] and c[11] == F(1, 2) and c[12] == F(1, 4)
    assert bernstein_coeffs("s0", (0, 0, 0)) == [1] * 12


@pytest.mark.parametrize("d", [1, 2, 3])
@given(data=st.data())
def test_recurrence_nonnegative(d, data):
    beta = data.draw(interior_points())
    r = recursion_matrices(d)[-1](beta)
    prev = eval_basis_bary(BasisId(d - 1), beta)
    for i in range(r.shape[0]):
        for j in range(r.shape[1]):
            assert r[i, j] * prev[i] >= 0


def _point_image(g, beta):
    out = [None] * 3
    for j in range(3):
        out[g.vertex_perm[j]] = beta[j]
    return tuple(out)


@pytest.mark.parametrize("basis", BASES)
@given(g=st.sampled_from(SYMMETRIES), beta=interior_points())
def test_symmetry_permutes_values(basis, g, beta):
    spec = get_basis(basis)
    index = {k.mu: j for j, (_, k) in enumerate(spec.elements)}
    perm = [index[apply_symmetry(g, k.mu)] for _, k in spec.elements]
    v = eval_basis_bary(basis, beta)
    w = eval_basis_bary(basis, _point_image(g, beta))
    assert [w[perm[j]] for j in range(spec.size)] == v


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("variant", ["standard", "tilde"])
@given(x=interior_points(), y=interior_points())
def test_exchange_identity(d, variant, x, y):
    mats = recursion_matrices(d + 1, variant)
    a, b = mats[d - 1], mats[d]
    assert np.array_equal(a(x).dot(b(y)), a(y).dot(b(x)))


def test_float_batch_matches_exact():
    rng = np.random.default_rng(0)
    betas = rng.dirichlet((1, 1, 1), size=200)
    for b in BASES:
        got = eval_basis_many_bary(b, betas)
        want = np.array([[float(v) for v in eval_basis_bary(b, tuple(beta))] for beta in betas])
        assert np.allclose(got, want, atol=1e-14)


def test_spline_function_roundtrip():
    t = Triangle(Point2(0, 0), Point2(2, F(1, 3)), Point2(F(1, 2), 1))
    f = SplineFunction(BasisId(2, "tilde"), [F(j, 7) for j in range(12)], t)
    obj = json.loads(json.dumps(f.to_json()))
    assert obj["variant"] == "tilde" and obj["coeffs"][1] == "1/7"
    g = SplineFunction.from_json(obj)
    x = cartesian(t, (F(1, 5), F(3, 10), F(1, 2)))
    assert g(x) == f(x) == eval_spline(f, x)
    with pytest.raises(ValueError):
        SplineFunction("s3", [1] * 15, t)


def test_spline_constant_one():
    t = Triangle(Point2(0.0, 0.0), Point2(1.0, 0.2), Point2(0.3, 0.9))
    f = SplineFunction("s3", [1.0] * 16, t)
    xs = np.array([[0.2, 0.2], [0.5, 0.3], [0.0, 0.0]])
    assert np.allclose(f.eval_many(xs), 1.0)
