import numpy as np
import pytest
from hypothesis import given, strategies as st

from og10 import _kernels
from og10.lattice import og10_lattice

SUB = [0, 1, 2, 3, 4, 5, 22, 23]


def og10_sub_gram():
    g = og10_lattice().gram
    return [[g[i][j] for j in SUB] for i in SUB]


needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")


@needs_numba
def test_norm_search_backends_agree():
    g = og10_sub_gram()
    a = _kernels.norm_search(g, 2, -6, use_numba=True)
    b = _kernels.norm_search(g, 2, -6, use_numba=False)
    assert np.array_equal(a, b)
    assert len(a) > 0


@needs_numba
def test_box_invariants_backends_agree():
    g = og10_sub_gram()
    for x, y in zip(_kernels.box_invariants(g, 1, use_numba=True),
                    _kernels.box_invariants(g, 1, use_numba=False)):
        assert np.array_equal(x, y)


def test_box_point_order():
    pts = [_kernels.box_point(i, 2, 1) for i in range(_kernels.box_size(2, 1))]
    assert pts[0] == (-1, -1) and pts[-1] == (1, 1) and len(set(pts)) == 9


def test_range_guard():
    with pytest.raises(OverflowError):
        _kernels.check_range([[2 ** 40]], 2 ** 20)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-3, 3),
       st.integers(-12, 12))
def test_norm_search_matches_python(diag, off, target):
    g = [[2 * diag[0], off, 0], [off, 2 * diag[1], 0], [0, 0, 2 * diag[2]]]
    want = set()
    for i in range(_kernels.box_size(3, 2)):
        p = _kernels.box_point(i, 3, 2)
        if sum(g[a][b] * p[a] * p[b] for a in range(3) for b in range(3)) == target:
            want.add(p)
    for use_numba in ([False, True] if _kernels.HAVE_NUMBA else [False]):
        got = [tuple(int(t) for t in row) for row in _kernels.norm_search(g, 2, target, use_numba=use_numba)]
        assert set(got) == want
        assert got == sorted(got)
