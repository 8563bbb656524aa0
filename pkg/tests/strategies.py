"""Shared hypothesis strategies."""

from hypothesis import strategies as st


def int_matrices(min_rows=1, max_rows=5, min_cols=1, max_cols=5, lo=-20, hi=20):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def vectors(n, lo=-6, hi=6, nonzero=True):
    s = st.lists(st.integers(lo, hi), min_size=n, max_size=n)
    return s.filter(any) if nonzero else s
