import pytest

import gsn_linalg as la
from extras import DivisionByZero, ShapeMismatch
from gsn_algebra import ONE, ZERO, Scalar


def test_rank_and_nullspace():
    m = la.as_matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert la.rank(m) == 2
    kernel = la.nullspace(m)
    assert len(kernel) == 1
    assert la.is_zero(la.matmul(m, kernel[0].reshape(-1, 1)))


def test_inverse_over_cyclotomic_field():
    i = Scalar.zeta(4)
    m = la.as_matrix([[ONE, i], [i, ONE]])
    assert la.is_identity(la.matmul(m, la.inverse(m)))


def test_singular_inverse():
    with pytest.raises(DivisionByZero):
        la.inverse(la.as_matrix([[1, 1], [1, 1]]))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        la.matmul(la.zeros(2, 3), la.zeros(2, 3))


def test_solve():
    m = la.as_matrix([[1, 1], [0, 1]])
    x = la.solve(m, la.as_matrix([[3], [1]]))
    assert x[0, 0] == 2 and x[1, 0] == 1
    assert la.solve(la.as_matrix([[1, 1], [1, 1]]), la.as_matrix([[1], [2]])) is None


def test_idempotent_and_trace():
    p = la.as_matrix([[1, 1], [0, 0]])
    assert la.is_idempotent(p)
    assert la.trace(p) == ONE
    assert la.rank(la.zeros(0, 0)) == 0
    assert la.trace(la.zeros(2, 2)) == ZERO


def test_column_space_keeps_pivot_columns():
    m = la.as_matrix([[1, 2, 0], [0, 0, 1]])
    basis = la.column_space(m)
    assert basis.shape == (2, 2)
    assert la.equal(basis, la.as_matrix([[1, 0], [0, 1]]))
