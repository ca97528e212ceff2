from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gerst.field import FieldSpec
from gerst.linalg import Matrix, SingularMatrixError, invert, kernel_basis, rank, solve

Q = FieldSpec.rational()


def test_rank_examples():
    assert rank(Matrix.identity(FieldSpec.prime(7), 5)) == 5
    assert rank(Matrix.zeros(Q, 3, 4)) == 0
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(Q, 2, 3)).tolist() == np.eye(3, dtype=int).tolist()
    assert kernel_basis(Matrix.identity(Q, 4)).shape[0] == 0
    F2 = FieldSpec.prime(2)
    assert kernel_basis(Matrix.from_rows(F2, [[1, 1]])).tolist() == [[1, 1]]


def test_solve_examples():
    b = Q.array([3, Fraction(1, 2)])
    assert solve(Matrix.identity(Q, 2), b).tolist() == b.tolist()
    assert solve(Matrix.zeros(Q, 2, 2), [1, 0]) is None
    assert solve(Matrix.from_rows(FieldSpec.prime(5), [[2]]), [1]).tolist() == [3]


def test_invert_examples():
    swap = Matrix.from_rows(Q, [[0, 1], [1, 0]])
    assert invert(swap) == swap
    assert invert(Matrix.identity(Q, 3)) == Matrix.identity(Q, 3)
    assert invert(Matrix.from_rows(FieldSpec.prime(7), [[2]])).data.tolist() == [[4]]
    with pytest.raises(SingularMatrixError):
        invert(Matrix.from_rows(Q, [[1, 2], [2, 4]]))


def _random_matrix(draw, field):
    r = draw(st.integers(1, 7))
    c = draw(st.integers(1, 7))
    rank_hint = draw(st.integers(0, min(r, c)))
    vals = st.integers(-3, 3)
    left = [[draw(vals) for _ in range(rank_hint)] for _ in range(r)]
    right = [[draw(vals) for _ in range(c)] for _ in range(rank_hint)]
    rows = [[sum(left[i][k] * right[k][j] for k in range(rank_hint)) for j in range(c)] for i in range(r)]
    return rows


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([0, 2, 3, 7]))
    field = Q if p == 0 else FieldSpec.prime(p)
    return field, _random_matrix(draw, field)


def _sympy_rank(rows, field):
    if not field.is_prime:
        return sympy.Matrix(rows).rank()
    from oracles import _rank_mod_p
    return _rank_mod_p([[x % field.p for x in r] for r in rows], field.p)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_reference(case):
    field, rows = case
    m = Matrix.from_rows(field, rows)
    K = kernel_basis(m)
    assert rank(m) == _sympy_rank(rows, field)
    assert rank(m) + K.shape[0] == m.cols
    for v in K:
        assert field.is_zero(field.tensordot(m.data, v, ([1], [0])))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_residual(case, data):
    field, rows = case
    m = Matrix.from_rows(field, rows)
    x0 = field.array([data.draw(st.integers(-4, 4)) for _ in range(m.cols)])
    b = field.tensordot(m.data, x0, ([1], [0]))
    x = solve(m, b)
    assert x is not None
    assert field.equal(field.tensordot(m.data, x, ([1], [0])), b)


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_deterministic(case):
    field, rows = case
    m = Matrix.from_rows(field, rows)
    assert kernel_basis(m).tolist() == kernel_basis(Matrix.from_rows(field, rows)).tolist()


def test_numba_and_numpy_backends_agree(monkeypatch):
    F = FieldSpec.prime(7)
    rng = np.random.default_rng(3)
    a = F.random((30, 12), rng)
    m = Matrix(F, np.concatenate([a, (a[:, :4] * 2) % 7], axis=1))
    ref = kernel_basis(m).tolist()
    monkeypatch.setenv("GERST_DISABLE_NUMBA", "1")
    assert kernel_basis(Matrix(F, m.data.copy())).tolist() == ref


@pytest.mark.parametrize("p", [2, 5, 65521])
def test_rref_kernels_identical(p):
    from gerst import _kernels
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, size=(40, 25), dtype=np.int64)
    a[20:] = (a[:20] * 3) % p
    x, y = a.copy(), a.copy()
    piv_a = _kernels._rref_numpy(x, p, 25)
    if _kernels.numba is None:
        pytest.skip("numba not installed")
    piv_b = _kernels._rref_numba(y, np.int64(p), np.int64(25))
    assert np.array_equal(piv_a, piv_b) and np.array_equal(x, y)
