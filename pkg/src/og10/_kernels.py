"""Hot loops over integer coordinate boxes.

Each kernel exists twice: a numba-compiled loop and a vectorised numpy
version.  The compiled path is used when numba imports and the environment
variable ``OG10_DISABLE_NUMBA`` is unset (or ``0``).  Both paths return
identical arrays in the same (odometer) order, and results are always
re-checked with exact Python integers by the callers that matter.

Everything here runs in int64, so callers go through :func:`check_range`
before dispatching.
"""

from __future__ import annotations

import os
from typing import Sequence, Tuple

import numpy as np

_DISABLED = os.environ.get("OG10_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

_INT64_SAFE = 2 ** 62


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def check_range(gram, radius: int, lin=None) -> None:
    """Refuse inputs whose intermediate values could overflow int64."""
    n = len(gram)
    gmax = max((abs(int(x)) for row in gram for x in row), default=0)
    bound = gmax * n * n * radius * radius
    if lin is not None and len(lin):
        lmax = max(abs(int(x)) for row in lin for x in row)
        bound = max(bound, lmax * n * radius)
    if bound >= _INT64_SAFE:
        raise OverflowError("box too large for 64-bit enumeration")


def box_size(n: int, radius: int) -> int:
    return (2 * radius + 1) ** n


def box_point(index: int, n: int, radius: int) -> Tuple[int, ...]:
    """The index-th point of the box in odometer order (last coordinate fastest)."""
    base = 2 * radius + 1
    out = [0] * n
    for k in range(n - 1, -1, -1):
        index, r = divmod(index, base)
        out[k] = r - radius
    return tuple(out)


# --- compiled kernels ---------------------------------------------------------

@njit(cache=True)
def _nb_norm_search(gram, radius, target, lin, lo, hi):
    n = gram.shape[0]
    m = lin.shape[0]
    x = np.full(n, -radius, dtype=np.int64)
    out = np.empty((64, n), dtype=np.int64)
    count = 0
    while True:
        ok = True
        for j in range(m):
            s = 0
            for k in range(n):
                s += lin[j, k] * x[k]
            if s < lo[j] or s > hi[j]:
                ok = False
                break
        if ok:
            q = 0
            for i in range(n):
                if x[i] != 0:
                    s = 0
                    for k in range(n):
                        s += gram[i, k] * x[k]
                    q += x[i] * s
            if q == target:
                if count == out.shape[0]:
                    bigger = np.empty((2 * count, n), dtype=np.int64)
                    bigger[:count] = out
                    out = bigger
                out[count] = x
                count += 1
        k = n - 1
        while k >= 0 and x[k] == radius:
            x[k] = -radius
            k -= 1
        if k < 0:
            break
        x[k] += 1
    return out[:count].copy()


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _nb_box_invariants(gram, radius):
    n = gram.shape[0]
    total = (2 * radius + 1) ** n
    q = np.empty(total, dtype=np.int64)
    div = np.empty(total, dtype=np.int64)
    content = np.empty(total, dtype=np.int64)
    x = np.full(n, -radius, dtype=np.int64)
    for idx in range(total):
        qq = 0
        d = 0
        c = 0
        for i in range(n):
            s = 0
            for k in range(n):
                s += gram[i, k] * x[k]
            qq += x[i] * s
            d = _gcd(d, s)
            c = _gcd(c, x[i])
        q[idx] = qq
        div[idx] = d
        content[idx] = c
        k = n - 1
        while k >= 0 and x[k] == radius:
            x[k] = -radius
            k -= 1
        if k >= 0:
            x[k] += 1
    return q, div, content


# --- numpy fallbacks -------------------------------------------------------------

def _np_box_chunks(n: int, radius: int, chunk: int = 1 << 18):
    """Yield consecutive blocks of box points in odometer order."""
    base = 2 * radius + 1
    total = base ** n
    powers = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % base - radius


def _np_norm_search(gram, radius, target, lin, lo, hi):
    n = gram.shape[0]
    found = []
    for pts in _np_box_chunks(n, radius):
        mask = np.ones(len(pts), dtype=bool)
        if lin.shape[0]:
            vals = pts @ lin.T
            mask &= np.all((vals >= lo) & (vals <= hi), axis=1)
        pts = pts[mask]
        q = np.einsum("ij,jk,ik->i", pts, gram, pts)
        found.append(pts[q == target])
    if not found:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(found).astype(np.int64)


def _np_box_invariants(gram, radius):
    qs, ds, cs = [], [], []
    for pts in _np_box_chunks(gram.shape[0], radius):
        gx = pts @ gram
        qs.append(np.einsum("ij,ij->i", pts, gx))
        ds.append(np.gcd.reduce(np.abs(gx), axis=1))
        cs.append(np.gcd.reduce(np.abs(pts), axis=1))
    return np.concatenate(qs), np.concatenate(ds), np.concatenate(cs)


# --- dispatch -------------------------------------------------------------------

def norm_search(gram: Sequence[Sequence[int]], radius: int, target: int,
                lin: Sequence[Sequence[int]] = (), lo: Sequence[int] = (),
                hi: Sequence[int] = (), use_numba: bool = None) -> np.ndarray:
    """All x with |x_i| <= radius, x^T G x == target and lo <= lin @ x <= hi."""
    n = len(gram)
    check_range(gram, radius, lin)
    g = np.asarray(gram, dtype=np.int64).reshape(n, n)
    lin_a = np.asarray(lin, dtype=np.int64).reshape(-1, n)
    lo_a = np.asarray(lo, dtype=np.int64).reshape(-1)
    hi_a = np.asarray(hi, dtype=np.int64).reshape(-1)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    fn = _nb_norm_search if use_numba else _np_norm_search
    return fn(g, np.int64(radius), np.int64(target), lin_a, lo_a, hi_a)


def box_invariants(gram: Sequence[Sequence[int]], radius: int,
                   use_numba: bool = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Square, divisibility (gcd of G x) and content (gcd of x) of every box point."""
    n = len(gram)
    check_range(gram, radius)
    g = np.asarray(gram, dtype=np.int64).reshape(n, n)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    fn = _nb_box_invariants if use_numba else _np_box_invariants
    return fn(g, np.int64(radius))
