"""Wall divisors, stably prime exceptional classes and related lattice moves
for manifolds of OG10 type."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from . import linalg
from .discriminant import is_og10_genus
from .embedding import LatticeEmbedding
from .errors import (Inconsistent, NonNegativeSquare, NotHalfIntegral, NotIntegral,
                     NotOG10Ambient, NotPrimitive, ZeroVector)
from .lattice import ClassLike, EmbeddedClass, Lattice, coords_of


class WallType(Enum):
    NegTwoDivOne = (-2, 1, 1)
    NegFourDivOne = (-4, 1, 5)
    NegSixDivThree = (-6, 3, 1)
    NegTwentyFourDivThree = (-24, 3, 3)

    @property
    def square(self) -> int:
        return self.value[0]

    @property
    def divisibility(self) -> int:
        return self.value[1]

    @property
    def codimension(self) -> int:
        """Codimension of the locus swept by the contracted curves (recorded, not verified)."""
        return self.value[2]


class PexType(Enum):
    NegTwoDivOne = (-2, 1)
    NegSixDivThree = (-6, 3)

    @property
    def square(self) -> int:
        return self.value[0]

    @property
    def divisibility(self) -> int:
        return self.value[1]


class Rejected(Enum):
    NotAWall = "NotAWall"
    NotPex = "NotPex"


NotAWall = Rejected.NotAWall
NotPex = Rejected.NotPex

_WALLS = {(t.square, t.divisibility): t for t in WallType}
_PEX = {(t.square, t.divisibility): t for t in PexType}

# classes of Sigma-perp whose multiples can be extremal on the singular moduli space
ADMISSIBLE_PROJECTIONS = frozenset({(-2, 1), (-2, 2), (-4, 1), (-10, 2)})


def classify_wall(square: int, div: int) -> Union[WallType, Rejected]:
    return _WALLS.get((square, div), NotAWall)


def classify_pex(square: int, div: int) -> Union[PexType, Rejected]:
    return _PEX.get((square, div), NotPex)


def ambient_class(context, v: ClassLike) -> EmbeddedClass:
    """Image of v in a lattice of OG10 type.

    ``context`` is an OG10-type lattice, a :class:`LatticeEmbedding` into one,
    or any object exposing such an embedding as ``og10_embedding``.
    """
    emb = getattr(context, "og10_embedding", None)
    if emb is None and isinstance(context, LatticeEmbedding):
        emb = context
    if emb is not None:
        if not is_og10_genus(emb.target):
            raise NotOG10Ambient("embedding target is not of OG10 type")
        if isinstance(v, EmbeddedClass) and v.ambient == emb.target:
            return v
        src = coords_of(emb.source, v)
        if not any(src):
            raise ZeroVector("class is zero")
        if linalg.vector_gcd(src) != 1:
            raise NotPrimitive(f"class {list(src)} is not primitive")
        img = emb.image(src)
        if not emb.primitive and linalg.vector_gcd(img.coords) != 1:
            raise NotPrimitive("image in the OG10 lattice is not primitive")
        return img
    if isinstance(context, Lattice):
        if not is_og10_genus(context):
            raise NotOG10Ambient(
                "divisibility must be computed in a lattice of OG10 type; "
                "pass an OG10 lattice or an embedding certificate")
        return EmbeddedClass(context, coords_of(context, v))
    raise NotOG10Ambient(f"cannot interpret {type(context).__name__} as an OG10 context")


def _invariants(context, v: ClassLike) -> Tuple[EmbeddedClass, int, int]:
    x = ambient_class(context, v)
    if x.is_zero():
        raise ZeroVector("class is zero")
    if not x.is_primitive:
        raise NotPrimitive(f"class {list(x.coords)} is not primitive")
    q = x.square
    if q >= 0:
        raise NonNegativeSquare(f"square {q} is not negative")
    return x, q, x.divisibility


def wall_type(context, v: ClassLike) -> Union[WallType, Rejected]:
    _, q, d = _invariants(context, v)
    return classify_wall(q, d)


def stably_prime_exceptional(context, v: ClassLike) -> Union[PexType, Rejected]:
    _, q, d = _invariants(context, v)
    return classify_pex(q, d)


@dataclass(frozen=True)
class Classification:
    coords: Tuple[int, ...]
    square: int
    divisibility: int
    verdict: str

    def to_json(self) -> dict:
        return {"class": list(self.coords), "square": self.square,
                "divisibility": self.divisibility, "verdict": self.verdict}


def classify(context, v: ClassLike, pex: bool = False) -> Classification:
    x, q, d = _invariants(context, v)
    verdict = classify_pex(q, d) if pex else classify_wall(q, d)
    return Classification(x.coords, q, d, verdict.name)


def reflection_rational(lattice: Lattice, d: ClassLike) -> Tuple[Tuple[Fraction, ...], ...]:
    """Matrix of F -> F - 2 (D,F)/q(D) D acting on column coordinate vectors."""
    c = coords_of(lattice, d)
    q = lattice.square(c)
    if q == 0:
        raise NonNegativeSquare("reflection needs a class of nonzero square")
    gd = linalg.matvec(lattice.gram, c)
    n = lattice.rank
    return tuple(tuple(Fraction(int(i == j)) - Fraction(2 * c[i] * gd[j], q) for j in range(n))
                 for i in range(n))


def reflection(lattice: Lattice, d: ClassLike) -> linalg.IntMatrix:
    """Integral reflection matrix, or NotIntegral naming a fractional entry."""
    m = reflection_rational(lattice, d)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x.denominator != 1:
                raise NotIntegral(f"entry ({i}, {j}) equals {x}", entry=str(x), position=[i, j])
    return tuple(tuple(int(x) for x in row) for row in m)


def _lattice_of(pic) -> Lattice:
    return pic.lattice if hasattr(pic, "lattice") and not isinstance(pic, Lattice) else pic


def half_integral_split(pic, d: ClassLike, sigma: ClassLike) -> EmbeddedClass:
    """E = (d - sigma)/2 for d orthogonal to the exceptional class sigma."""
    lat = _lattice_of(pic)
    dc, sc = coords_of(lat, d), coords_of(lat, sigma)
    if lat.pair(dc, sc) != 0:
        raise Inconsistent("d is not orthogonal to sigma")
    diff = [a - b for a, b in zip(dc, sc)]
    if any(x % 2 for x in diff):
        raise NotHalfIntegral("(d - sigma)/2 is not an integral class")
    e = EmbeddedClass(lat, tuple(x // 2 for x in diff))
    qs = lat.square(sc)
    assert 4 * e.square == lat.square(dc) + qs
    assert 2 * e.pair(sc) == -qs
    return e


@dataclass(frozen=True)
class Projection:
    proj: Tuple[Fraction, ...]
    primitive: Tuple[int, ...]
    square: int
    divisibility: int
    admissible: bool

    def to_json(self) -> dict:
        return {"projection": [str(x) for x in self.proj], "primitive": list(self.primitive),
                "square": self.square, "divisibility": self.divisibility,
                "admissible": self.admissible}


def sigma_perp_divisibility(pic, sigma: ClassLike, v: ClassLike) -> int:
    """Divisibility of v inside sigma-perp of the full OG10-type lattice."""
    from .lattice import Sublattice, orthogonal_complement
    s = ambient_class(pic, sigma)
    x = ambient_class(pic, v)
    perp = orthogonal_complement(s.ambient, Sublattice(s.ambient, (s.coords,)))
    return linalg.vector_gcd([x.pair(b) for b in perp.basis])


def sigma_projection_class(pic, d: ClassLike, sigma: ClassLike) -> Projection:
    """Project d to sigma-perp and test the primitive class on that ray.

    ``pic`` must carry an OG10 embedding certificate (or be OG10 itself),
    since divisibility in sigma-perp involves transcendental classes.
    """
    lat = _lattice_of(pic)
    dc, sc = coords_of(lat, d), coords_of(lat, sigma)
    qs = lat.square(sc)
    if qs != -6:
        raise Inconsistent(f"sigma has square {qs}, expected -6")
    t = Fraction(lat.pair(dc, sc), qs)
    proj = tuple(Fraction(a) - t * b for a, b in zip(dc, sc))
    if not any(proj):
        raise ZeroVector("projection vanishes")
    prim = linalg.primitive_part(proj)
    sq = lat.square(prim)
    div = sigma_perp_divisibility(pic, sc, prim)
    return Projection(proj, prim, sq, div, (sq, div) in ADMISSIBLE_PROJECTIONS)


def lagrangian_candidate(ctx, v: ClassLike, ample_side: Optional[ClassLike] = None) -> bool:
    """Primitive isotropic class on the closed movable chamber of a rank-2 context."""
    from . import cones
    c = coords_of(ctx.pic, v)
    if not any(c) or linalg.vector_gcd(c) != 1 or ctx.pic.square(c) != 0:
        return False
    side = ctx.positive_ray_hint if ample_side is None else coords_of(ctx.pic, ample_side)
    mov = cones.movable_chamber(ctx, side)
    return mov.closed_selected_contains(c)
