"""Discriminant forms and the Eichler-type orbit tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from . import linalg
from .errors import NoU2Witness, NotPrimitive, RankTooLarge, WrongDiscriminant, ZeroVector
from .lattice import ClassLike, Lattice, Sublattice, coords_of, divisibility, signature


@dataclass(frozen=True)
class DiscriminantGroup:
    """A_L = L^v / L as a product of cyclic groups.

    ``generator_lifts[i]`` is an element of L^v (rational L-coordinates) whose
    class generates the i-th cyclic factor of order ``invariant_factors[i]``.
    """

    lattice: Lattice = field(repr=False)
    invariant_factors: Tuple[int, ...]
    generator_lifts: Tuple[linalg.RatVector, ...]
    # row i of ``_to_components`` maps L-coordinates of x in L^v to the i-th
    # component before reduction
    _to_components: Tuple[Tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def identity(self) -> "DiscElement":
        return DiscElement(self, tuple(0 for _ in self.invariant_factors))

    def element(self, components) -> "DiscElement":
        return DiscElement(self, tuple(components))

    def lift(self, elem: "DiscElement") -> linalg.RatVector:
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for c, g in zip(elem.components, self.generator_lifts):
            for k in range(n):
                out[k] += c * g[k]
        return tuple(out)

    def from_dual(self, x) -> "DiscElement":
        """Class of a vector x of L^v given in rational L-coordinates."""
        x = tuple(Fraction(t) for t in x)
        if any(t.denominator != 1 for t in linalg.matvec(self.lattice.gram, x)):
            raise ValueError("vector is not in the dual lattice")
        comps = []
        for row, d in zip(self._to_components, self.invariant_factors):
            z = linalg.dot(row, x)
            if z.denominator != 1:
                raise ValueError("component is not integral")
            comps.append(int(z))
        return DiscElement(self, tuple(comps))

    def quadratic_value(self, elem: "DiscElement") -> Fraction:
        """q(lift) reduced into [0, 2)."""
        x = self.lift(elem)
        return self.lattice.pair(x, x) % 2

    def bilinear_value(self, a: "DiscElement", b: "DiscElement") -> Fraction:
        return self.lattice.pair(self.lift(a), self.lift(b)) % 1

    def elements(self):
        for comps in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield DiscElement(self, comps)

    @property
    def form_values(self) -> Dict[Tuple[int, ...], Fraction]:
        return {e.components: self.quadratic_value(e) for e in self.elements()}

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "generator_lifts": [[str(t) for t in g] for g in self.generator_lifts],
            "generator_squares": [str(self.quadratic_value(self.element(
                tuple(int(i == j) for j in range(len(self.invariant_factors)))))) for i in
                range(len(self.invariant_factors))],
        }


@dataclass(frozen=True)
class DiscElement:
    group: DiscriminantGroup = field(repr=False)
    components: Tuple[int, ...]

    def __post_init__(self):
        comps = tuple(int(c) % d for c, d in zip(self.components, self.group.invariant_factors))
        if len(comps) != len(self.group.invariant_factors):
            raise ValueError("wrong number of components")
        object.__setattr__(self, "components", comps)

    def __add__(self, other: "DiscElement") -> "DiscElement":
        return DiscElement(self.group, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "DiscElement":
        return DiscElement(self.group, tuple(-a for a in self.components))

    @property
    def is_identity(self) -> bool:
        return not any(self.components)

    @property
    def order(self) -> int:
        from math import gcd
        out = 1
        for c, d in zip(self.components, self.group.invariant_factors):
            k = d // gcd(c, d)
            out = out * k // gcd(out, k)
        return out

    @property
    def square(self) -> Fraction:
        return self.group.quadratic_value(self)


@lru_cache(maxsize=256)
def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    u, d, v = linalg.smith_normal_form(lattice.gram)
    # U G V = D, so G^{-1} = V D^{-1} U and L^v = V D^{-1} Z^n.
    n = lattice.rank
    diag = [d[i][i] for i in range(n)]
    vinv = linalg.inverse_unimodular(v)
    lifts, rows, factors = [], [], []
    for i, di in enumerate(diag):
        if di == 1:
            continue
        lifts.append(tuple(Fraction(v[k][i], di) for k in range(n)))
        rows.append(tuple(Fraction(di * vinv[i][k]) for k in range(n)))
        factors.append(di)
    return DiscriminantGroup(lattice, tuple(factors), tuple(lifts), tuple(rows))


def residue(lattice: Lattice, v: ClassLike) -> DiscElement:
    """Class of v / div(v) in the discriminant group."""
    c = coords_of(lattice, v)
    if not any(c):
        raise ZeroVector("residue of the zero vector is undefined")
    k = divisibility(lattice, c)
    return discriminant_group(lattice).from_dual(tuple(Fraction(x, k) for x in c))


def _require_primitive(c):
    if not any(c):
        raise ZeroVector("vector is zero")
    if linalg.vector_gcd(c) != 1:
        raise NotPrimitive(f"vector {list(c)} is not primitive")


def _witness_count(lattice: Lattice) -> int:
    return len(lattice.hyperbolic_planes)


def eichler_equivalent(lattice: Lattice, v: ClassLike, w: ClassLike) -> bool:
    """Same orbit under the stable orthogonal group, decided by invariants.

    Needs a certified pair of orthogonal hyperbolic planes; without it the
    invariants do not determine the orbit and we refuse to answer.
    """
    if _witness_count(lattice) < 2:
        raise NoU2Witness("lattice carries no certified U+U summand")
    a, b = coords_of(lattice, v), coords_of(lattice, w)
    _require_primitive(a)
    _require_primitive(b)
    return lattice.square(a) == lattice.square(b) and residue(lattice, a) == residue(lattice, b)


def eichler_sublattice_equivalent(lattice: Lattice, s: Sublattice, t: Sublattice) -> bool:
    """Orbit test for based sublattices; bases are compared in the given order."""
    n = _witness_count(lattice)
    if n < 2:
        raise NoU2Witness("lattice carries no certified U+U summand")
    if s.rank != t.rank:
        return False
    if s.rank > n - 1:
        raise RankTooLarge(f"sublattice rank {s.rank} exceeds {n - 1}")
    if s.gram != t.gram:
        return False
    for a, b in zip(s.basis, t.basis):
        if residue(lattice, a) != residue(lattice, b):
            return False
    return True


def div3_square_congruence(square: int, div: int) -> bool:
    """Constraint on primitive classes in a lattice with A_L = Z/3, q = 4/3.

    A primitive class of divisibility 3 has v/3 generating A_L, so
    q(v)/9 = 4/3 mod 2Z, i.e. q(v) = 12 mod 18.
    """
    if div == 1:
        return True
    if div == 3:
        return square % 18 == 12
    return False


def has_og10_discriminant(lattice: Lattice) -> bool:
    g = discriminant_group(lattice)
    if g.invariant_factors != (3,):
        return False
    return g.quadratic_value(g.element((1,))) == Fraction(4, 3)


def is_og10_genus(lattice: Lattice) -> bool:
    """Rank 24, signature (3, 21) and discriminant form Z/3 with q = 4/3."""
    return (lattice.rank == 24 and signature(lattice) == (3, 21)
            and has_og10_discriminant(lattice))


def div3_square_residue_check(lattice: Lattice, v: ClassLike) -> bool:
    if not has_og10_discriminant(lattice):
        raise WrongDiscriminant("discriminant form is not Z/3 with q = 4/3")
    c = coords_of(lattice, v)
    _require_primitive(c)
    return div3_square_congruence(lattice.square(c), divisibility(lattice, c))
