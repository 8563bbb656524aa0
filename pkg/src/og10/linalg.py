"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ints (or ``Fraction`` for
rational vectors).  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]
RatVector = Tuple[Fraction, ...]


def as_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def shape(m: IntMatrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> IntMatrix:
    return tuple((0,) * c for _ in range(r))


def transpose(m: Sequence[Sequence]) -> tuple:
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vecmat(v: Sequence, a: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    if not a:
        return ()
    return tuple(sum(x * a[i][j] for i, x in enumerate(v)) for j in range(len(a[0])))


def dot(u: Sequence, v: Sequence) -> int:
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_part(v: Sequence) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = vector_gcd(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in ints)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse_rational(m: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse_rational(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


# --- Smith normal form ------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``u @ m @ v == d`` in Smith form.

    Pivoting picks the smallest nonzero absolute value in the active block,
    which keeps intermediate entries small on the rank-24 Gram matrices.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    _, d, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(shape(d))))


def is_smith_form(d: IntMatrix) -> bool:
    rows, cols = shape(d)
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i][j]:
                return False
    diag = [d[i][i] for i in range(min(rows, cols))]
    if any(x < 0 for x in diag):
        return False
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            return False
        if x and y % x:
            return False
    return True


# --- Hermite normal form ----------------------------------------------------

def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form: returns ``(h, t)`` with ``t @ m == h``.

    Zero rows of ``h`` sit at the bottom, pivots are positive and the entries
    above each pivot lie in ``[0, pivot)``.
    """
    h = [list(map(int, row)) for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    t = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            if h[r][c] == 0:
                h[r], h[i] = h[i], h[r]
                t[r], t[i] = t[i], t[r]
                continue
            g, x, y = _xgcd(h[r][c], h[i][c])
            p, q = h[r][c] // g, h[i][c] // g
            # [[x, y], [-q, p]] has determinant 1
            hr, hi = h[r], h[i]
            h[r] = [x * a + y * b for a, b in zip(hr, hi)]
            h[i] = [-q * a + p * b for a, b in zip(hr, hi)]
            tr, ti = t[r], t[i]
            t[r] = [x * a + y * b for a, b in zip(tr, ti)]
            t[i] = [-q * a + p * b for a, b in zip(tr, ti)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-a for a in h[r]]
            t[r] = [-a for a in t[r]]
        p = h[r][c]
        for i in range(r):
            k = h[i][c] // p
            if k:
                h[i] = [a - k * b for a, b in zip(h[i], h[r])]
                t[i] = [a - k * b for a, b in zip(t[i], t[r])]
        r += 1
    return as_matrix(h), as_matrix(t)


def integer_kernel(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Basis (as rows) of the saturated left kernel ``{x : x @ m == 0}``."""
    m = as_matrix(m)
    rows = len(m)
    if rows == 0:
        return ()
    if not m[0]:
        return identity(rows)
    h, t = hermite_normal_form(m)
    return tuple(t[i] for i in range(rows) if not any(h[i]))


def row_lattice_basis(gens: Sequence[Sequence[int]]) -> IntMatrix:
    """A basis for the Z-span of the given integer rows."""
    gens = as_matrix(gens)
    if not gens:
        return ()
    h, _ = hermite_normal_form(gens)
    return tuple(row for row in h if any(row))


def saturation_basis(gens: Sequence[Sequence[int]], n: Optional[int] = None) -> IntMatrix:
    """Basis of ``span_Q(gens) ∩ Z^n`` (the primitive closure)."""
    gens = as_matrix(gens)
    if not gens:
        return ()
    n = len(gens[0]) if n is None else n
    annihilator = integer_kernel(transpose(gens))
    if not annihilator:
        return identity(n)
    return integer_kernel(transpose(annihilator))


# --- rational solving -------------------------------------------------------

def solve_rational(m: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """Some exact solution of ``m @ x == b``, or ``None`` if inconsistent."""
    rows = len(m)
    if len(b) != rows:
        raise ValueError("right-hand side length does not match the matrix")
    cols = len(m[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(a[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def solve_integer_left(m: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """An integer row vector ``x`` with ``x @ m == b``, or ``None``."""
    m = as_matrix(m)
    rows = len(m)
    cols = len(m[0]) if rows else len(b)
    if len(b) != cols:
        raise ValueError("right-hand side length does not match the matrix")
    if rows == 0:
        return () if not any(b) else None
    h, t = hermite_normal_form(m)
    z = [0] * rows
    for i, row in enumerate(h):
        p = next((c for c, a in enumerate(row) if a), None)
        if p is None:
            break
        rest = b[p] - sum(z[j] * h[j][p] for j in range(i))
        if rest % row[p]:
            return None
        z[i] = rest // row[p]
    x = vecmat(z, t)
    if tuple(vecmat(x, m)) != tuple(b):
        return None
    return tuple(x)
