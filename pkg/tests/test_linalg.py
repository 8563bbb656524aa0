from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from og10 import linalg
from strategies import int_matrices


def test_smith_form_small():
    u, d, v = linalg.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [d[i][i] for i in range(3)] == [2, 6, 12]
    assert linalg.matmul(linalg.matmul(u, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]), v) == d


def test_invariant_factors_of_a2():
    assert linalg.invariant_factors([[-2, 1], [1, -2]]) == (1, 3)


def test_determinant_bareiss():
    assert linalg.determinant([[0, 1], [1, 0]]) == -1
    assert linalg.determinant([[2, 1, 0], [1, 2, 1], [0, 1, 2]]) == 4


def test_hnf_transform():
    m = [[4, 6], [2, 3], [1, 1]]
    h, t = linalg.hermite_normal_form(m)
    assert linalg.matmul(t, m) == h
    assert abs(linalg.determinant(t)) == 1


def test_integer_kernel_saturated():
    k = linalg.integer_kernel([[2], [4]])
    assert len(k) == 1 and linalg.primitive_part(k[0]) in ((2, -1), (-2, 1))


def test_solve_integer_left():
    assert linalg.solve_integer_left([[2], [3]], [1]) is not None
    assert linalg.solve_integer_left([[2], [4]], [1]) is None


def test_solve_rational():
    x = linalg.solve_rational([[2, 0], [0, 3]], [1, 1])
    assert x == (Fraction(1, 2), Fraction(1, 3))
    assert linalg.solve_rational([[1, 1], [1, 1]], [0, 1]) is None


def test_inverse_unimodular_rejects():
    with pytest.raises(ValueError):
        linalg.inverse_unimodular([[2, 0], [0, 1]])


@given(int_matrices(max_rows=5, max_cols=5))
def test_snf_properties(m):
    u, d, v = linalg.smith_normal_form(m)
    assert linalg.matmul(linalg.matmul(u, m), v) == d
    assert abs(linalg.determinant(u)) == 1
    assert abs(linalg.determinant(v)) == 1
    assert linalg.is_smith_form(d)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == linalg.rank(m)


@given(int_matrices(max_rows=4, max_cols=6, lo=-9, hi=9))
def test_saturation_idempotent(m):
    s = linalg.saturation_basis(m, len(m[0]))
    again = linalg.saturation_basis(s, len(m[0]))
    assert linalg.row_lattice_basis(again) == linalg.row_lattice_basis(s)
    assert len(s) == linalg.rank(m)
    # every generator lies in the saturation
    for row in m:
        assert linalg.solve_integer_left(s, row) is not None


@given(int_matrices(max_rows=5, max_cols=4, lo=-9, hi=9))
def test_kernel_is_annihilating_and_saturated(m):
    k = linalg.integer_kernel(m)
    for row in k:
        assert all(x == 0 for x in linalg.vecmat(row, m))
    assert len(k) == len(m) - linalg.rank(m)
    if k:
        assert linalg.row_lattice_basis(linalg.saturation_basis(k, len(m))) == linalg.row_lattice_basis(k)
