"""Even integral lattices, classes inside them and the named lattices we need."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import (Degenerate, DimensionMismatch, NotEven, NotSymmetric,
                     ValidationError, ZeroVector)

Coords = Tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """A nondegenerate even lattice given by its Gram matrix.

    ``hyperbolic_planes`` lists index pairs ``(i, j)`` whose basis vectors span
    an orthogonal direct summand isometric to U.  It is the certificate used by
    the Eichler tests and is checked on construction.
    """

    gram: linalg.IntMatrix
    label: Optional[str] = None
    hyperbolic_planes: Tuple[Tuple[int, int], ...] = ()
    determinant: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        g = linalg.as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionMismatch("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
        for i in range(n):
            if g[i][i] % 2:
                raise NotEven(f"diagonal entry gram[{i}][{i}] = {g[i][i]} is odd")
        det = linalg.determinant(g)
        if det == 0:
            raise Degenerate("Gram matrix is singular")
        object.__setattr__(self, "determinant", det)
        planes = tuple(tuple(p) for p in self.hyperbolic_planes)
        object.__setattr__(self, "hyperbolic_planes", planes)
        used = set()
        for i, j in planes:
            if {i, j} & used or i == j:
                raise ValidationError("hyperbolic plane witnesses must be disjoint")
            used |= {i, j}
            ok = g[i][i] == 0 and g[j][j] == 0 and g[i][j] == 1
            ok = ok and all(g[i][k] == 0 and g[j][k] == 0 for k in range(n) if k not in (i, j))
            if not ok:
                raise ValidationError(f"indices {(i, j)} do not span an orthogonal copy of U")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, u: Sequence, v: Sequence):
        if len(u) != self.rank or len(v) != self.rank:
            raise DimensionMismatch(f"expected vectors of length {self.rank}")
        return linalg.dot(u, linalg.matvec(self.gram, v))

    def square(self, v: Sequence):
        return self.pair(v, v)

    def element(self, coords: Sequence[int]) -> "EmbeddedClass":
        return EmbeddedClass(self, tuple(int(x) for x in coords))

    def basis_vector(self, i: int) -> "EmbeddedClass":
        return self.element(tuple(int(k == i) for k in range(self.rank)))

    def to_json(self) -> dict:
        out = {"label": self.label, "gram": [list(row) for row in self.gram]}
        if self.hyperbolic_planes:
            out["hyperbolic_planes"] = [list(p) for p in self.hyperbolic_planes]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls(data["gram"], data.get("label"),
                   tuple(tuple(p) for p in data.get("hyperbolic_planes", ())))


@dataclass(frozen=True)
class EmbeddedClass:
    """An integral class of a fixed ambient lattice."""

    ambient: Lattice = field(repr=False)
    coords: Coords

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if len(self.coords) != self.ambient.rank:
            raise DimensionMismatch(
                f"class has {len(self.coords)} coordinates, lattice has rank {self.ambient.rank}")

    def _coerce(self, other) -> Coords:
        if isinstance(other, EmbeddedClass):
            if other.ambient != self.ambient:
                raise DimensionMismatch("classes live in different lattices")
            return other.coords
        return tuple(other)

    def __add__(self, other):
        o = self._coerce(other)
        return EmbeddedClass(self.ambient, tuple(a + b for a, b in zip(self.coords, o)))

    def __sub__(self, other):
        o = self._coerce(other)
        return EmbeddedClass(self.ambient, tuple(a - b for a, b in zip(self.coords, o)))

    def __neg__(self):
        return EmbeddedClass(self.ambient, tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        return EmbeddedClass(self.ambient, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def pair(self, other) -> int:
        return self.ambient.pair(self.coords, self._coerce(other))

    @property
    def square(self) -> int:
        return self.ambient.square(self.coords)

    @property
    def divisibility(self) -> int:
        return divisibility(self.ambient, self)

    @property
    def is_primitive(self) -> bool:
        return linalg.vector_gcd(self.coords) == 1

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> dict:
        return {"lattice": self.ambient.label, "coords": list(self.coords)}


ClassLike = Union[EmbeddedClass, Sequence[int]]


def coords_of(lattice: Lattice, v: ClassLike) -> Coords:
    if isinstance(v, EmbeddedClass):
        if v.ambient != lattice:
            raise DimensionMismatch("class belongs to a different lattice")
        return v.coords
    c = tuple(int(x) for x in v)
    if len(c) != lattice.rank:
        raise DimensionMismatch(f"expected {lattice.rank} coordinates, got {len(c)}")
    return c


@dataclass(frozen=True)
class Sublattice:
    """A sublattice spanned by linearly independent classes of ``ambient``."""

    ambient: Lattice
    basis: Tuple[Coords, ...]
    saturated: bool = field(init=False)

    def __post_init__(self):
        basis = tuple(coords_of(self.ambient, b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if basis and linalg.rank(basis) != len(basis):
            raise ValidationError("sublattice basis is linearly dependent")
        # the span is saturated iff all invariant factors of the basis are 1
        same = all(d == 1 for d in linalg.invariant_factors(basis)) if basis else True
        object.__setattr__(self, "saturated", same)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> linalg.IntMatrix:
        return tuple(tuple(self.ambient.pair(u, v) for v in self.basis) for u in self.basis)

    def classes(self) -> Tuple[EmbeddedClass, ...]:
        return tuple(EmbeddedClass(self.ambient, b) for b in self.basis)

    def contains(self, v: ClassLike) -> bool:
        c = coords_of(self.ambient, v)
        if not self.basis:
            return not any(c)
        return linalg.solve_integer_left(self.basis, c) is not None

    def span_equals(self, other: "Sublattice") -> bool:
        return (self.rank == other.rank and all(self.contains(b) for b in other.basis)
                and all(other.contains(b) for b in self.basis))

    @classmethod
    def from_classes(cls, ambient: Lattice, classes: Iterable[ClassLike]) -> "Sublattice":
        return cls(ambient, tuple(coords_of(ambient, c) for c in classes))


# --- operations ---------------------------------------------------------------

def make_lattice(gram: Sequence[Sequence[int]], label: Optional[str] = None,
                 hyperbolic_planes=()) -> Lattice:
    return Lattice(linalg.as_matrix(gram), label, tuple(hyperbolic_planes))


def pair(lattice: Lattice, u: ClassLike, v: ClassLike) -> int:
    return lattice.pair(coords_of(lattice, u), coords_of(lattice, v))


@lru_cache(maxsize=256)
def signature(lattice: Lattice) -> Tuple[int, int]:
    """(positive, negative) index via congruence diagonalisation over Q."""
    a = [[Fraction(x) for x in row] for row in lattice.gram]
    n = len(a)
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue  # unreachable for nondegenerate input
                # e_k <- e_k + e_j makes the diagonal entry 2 a_kj
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] -= f * row[k]
    return pos, neg


def divisibility(lattice: Lattice, v: ClassLike) -> int:
    """Positive generator of the ideal (v, L)."""
    c = coords_of(lattice, v)
    if not any(c):
        raise ZeroVector("divisibility of the zero vector is undefined")
    return linalg.vector_gcd(linalg.matvec(lattice.gram, c))


def orthogonal_complement(lattice: Lattice, s: Sublattice) -> Sublattice:
    if not s.basis:
        return Sublattice(lattice, linalg.identity(lattice.rank))
    m = linalg.matmul(lattice.gram, linalg.transpose(s.basis))
    return Sublattice(lattice, linalg.integer_kernel(m))


def saturate(lattice: Lattice, s: Sublattice) -> Sublattice:
    if not s.basis:
        return s
    return Sublattice(lattice, linalg.saturation_basis(s.basis, lattice.rank))


def rescale(lattice: Lattice, k: int) -> Lattice:
    if k == 0:
        raise Degenerate("scale must be nonzero")
    label = None if lattice.label is None else (
        lattice.label if k == 1 else f"{lattice.label}({k})")
    planes = lattice.hyperbolic_planes if k == 1 else ()
    return Lattice(tuple(tuple(k * x for x in row) for row in lattice.gram), label, planes)


def compose(parts: Sequence[Tuple[Lattice, int]], label: Optional[str] = None) -> Lattice:
    """Orthogonal direct sum of rescaled summands L1(n1) ⊕ L2(n2) ⊕ ..."""
    n = sum(l.rank for l, _ in parts)
    g = [[0] * n for _ in range(n)]
    planes = []
    off = 0
    for lat, k in parts:
        scaled = rescale(lat, k)
        for i, row in enumerate(scaled.gram):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        if k == 1:
            if lat.hyperbolic_planes:
                planes.extend((off + i, off + j) for i, j in lat.hyperbolic_planes)
            elif lat.gram == ((0, 1), (1, 0)):
                planes.append((off, off + 1))
        off += lat.rank
    if label is None:
        label = " + ".join(
            (l.label or "?") if k == 1 else f"{l.label or '?'}({k})" for l, k in parts)
    return Lattice(linalg.as_matrix(g), label, tuple(planes))


def mukai_algebraic(pic: Lattice) -> Lattice:
    """Z ⊕ Pic(S) ⊕ Z with ((r,c,s),(r',c',s')) = c.c' - r s' - r' s."""
    n = pic.rank + 2
    g = [[0] * n for _ in range(n)]
    g[0][n - 1] = g[n - 1][0] = -1
    for i, row in enumerate(pic.gram):
        for j, x in enumerate(row):
            g[i + 1][j + 1] = x
    label = f"Mukai({pic.label})" if pic.label else "Mukai"
    return Lattice(linalg.as_matrix(g), label)


# --- named lattices -------------------------------------------------------------

_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


@lru_cache(maxsize=None)
def hyperbolic_plane() -> Lattice:
    return Lattice(((0, 1), (1, 0)), "U", ((0, 1),))


@lru_cache(maxsize=None)
def e8_negative() -> Lattice:
    """E8(-1): the negated Cartan matrix in Bourbaki labelling."""
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = 1
    return Lattice(linalg.as_matrix(g), "E8(-1)")


@lru_cache(maxsize=None)
def a2_negative() -> Lattice:
    return Lattice(((-2, 1), (1, -2)), "A2(-1)")


@lru_cache(maxsize=None)
def og10_lattice() -> Lattice:
    """U^3 ⊕ E8(-1)^2 ⊕ A2(-1) with the summands in that order (rank 24).

    Coordinates 0..5 are the three hyperbolic planes, 6..21 the two E8(-1)
    copies and 22, 23 the A2(-1) generators.
    """
    u, e8, a2 = hyperbolic_plane(), e8_negative(), a2_negative()
    return compose([(u, 1), (u, 1), (u, 1), (e8, 1), (e8, 1), (a2, 1)], label="og10")


OG10_A2 = (22, 23)


def og10_vector(u: Sequence[Sequence[int]] = (), e8: Sequence[Sequence[int]] = (),
                a2: Sequence[int] = (0, 0)) -> EmbeddedClass:
    """Build an og10 class from its U-, E8- and A2-components."""
    coords = [0] * 24
    for k, pair_ in enumerate(u):
        coords[2 * k], coords[2 * k + 1] = pair_
    for k, block in enumerate(e8):
        coords[6 + 8 * k: 14 + 8 * k] = list(block)
    coords[22], coords[23] = a2
    return og10_lattice().element(coords)


NAMED_LATTICES = {
    "og10": og10_lattice,
    "U": hyperbolic_plane,
    "E8(-1)": e8_negative,
    "A2(-1)": a2_negative,
}
