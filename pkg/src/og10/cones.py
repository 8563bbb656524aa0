"""Rank-2 positive cones: norm equations, wall rays and chambers.

Directions are written in the coordinates of the rank-2 Picard lattice.  Any
two rays inside one component of the positive cone make an angle below pi, so
they are ordered by the sign of the coordinate cross product, which is exact.
Irrational isotropic boundary rays are stored as pairs of quadratic surds.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import _kernels, linalg
from .discriminant import div3_square_congruence
from .embedding import LatticeEmbedding
from .errors import NotCubicGram, NotPositive, OnWall, ValidationError
from .lattice import Lattice, coords_of, hyperbolic_plane, make_lattice, og10_lattice, signature
from .walls import NotAWall, PexType, WallType, ambient_class, classify_pex, classify_wall


class IncompleteEnumeration(UserWarning):
    """A norm equation was only searched inside a finite box."""


def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = k^2 * m with m squarefree; returns (k, m)."""
    k, m, p = 1, n, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return k, m


@dataclass(frozen=True)
class QuadSurd:
    """a + b sqrt(d) with rational a, b and squarefree d > 1 (or b = 0)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d < 1:
            raise ValueError("radicand must be positive")
        k, m = _squarefree_split(d)
        b *= k
        if m == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            m = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", m)

    @staticmethod
    def _lift(x) -> "QuadSurd":
        return x if isinstance(x, QuadSurd) else QuadSurd(Fraction(x))

    def _common(self, other: "QuadSurd") -> int:
        if self.d != other.d and self.d != 1 and other.d != 1:
            raise ValueError("surds with different radicands")
        return max(self.d, other.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self._common(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self._common(o)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def sign(self) -> int:
        def sg(x):
            return (x > 0) - (x < 0)
        sa, sb = sg(self.a), sg(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa * sg(diff)

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        if self.a == 0:
            return rad
        return f"{self.a}+{rad}"


Direction = Tuple[Union[int, QuadSurd], Union[int, QuadSurd]]


def cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def _sign(x) -> int:
    if isinstance(x, QuadSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def _canonical_sign(v: Tuple[int, int]) -> Tuple[int, int]:
    for x in v:
        if x:
            return v if x > 0 else (-v[0], -v[1])
    return v


# --- norm equations ---------------------------------------------------------------

def _form(pic: Lattice) -> Tuple[int, int, int]:
    if pic.rank != 2:
        raise ValidationError("rank-2 lattice required")
    return pic.gram[0][0], pic.gram[0][1], pic.gram[1][1]


def rational_isotropic_vector(pic: Lattice) -> Optional[Tuple[int, int]]:
    a, b, c = _form(pic)
    disc = b * b - a * c
    if disc < 0:
        return None
    r = isqrt(disc)
    if r * r != disc:
        return None
    if c == 0:
        return (0, 1)
    # c y^2 + 2 b x y + a x^2 = 0 at x = c gives y = -b + r
    return linalg.primitive_part((c, -b + r))


def solve_norm_equation(pic: Lattice, t: int, bound: int = 50) -> Tuple[List[Tuple[int, int]], bool]:
    """Primitive (x, y) with q(x, y) = t, one from each +- pair.

    When the form has a rational isotropic vector u, write the lattice as
    <w, u> with det 1; then q(a w + b u) = a (a q(w) + 2 b (w, u)) and a runs
    over the divisors of t, which is exhaustive.  Otherwise fall back to a
    box search of the given radius and report the result as incomplete.
    """
    if t >= 0:
        raise ValidationError("norm equation solver expects t < 0")
    u = rational_isotropic_vector(pic)
    sols = set()
    if u is None:
        for x in _kernels.norm_search(pic.gram, bound, t):
            v = (int(x[0]), int(x[1]))
            if gcd(*v) == 1:
                sols.add(_canonical_sign(v))
        return sorted(sols), False
    g, p, q = linalg._xgcd(u[0], u[1])
    # w = (-q, p) satisfies det [[w], [u]] = -q u1 - p u0 = -1
    w = (-q, p)
    qw, wu = pic.square(w), pic.pair(w, u)
    for a in range(1, abs(t) + 1):
        if t % a:
            continue
        for aa in (a, -a):
            num = t // aa - aa * qw
            if num % (2 * wu):
                continue
            bb = num // (2 * wu)
            v = (aa * w[0] + bb * u[0], aa * w[1] + bb * u[1])
            if gcd(*v) == 1:
                sols.add(_canonical_sign(v))
    return sorted(sols), True


# --- contexts, rays, chambers ---------------------------------------------------------

@dataclass(frozen=True)
class ConeContext:
    """A rank-2 hyperbolic Picard lattice embedded in the OG10 lattice."""

    pic: Lattice
    og10_embedding: LatticeEmbedding
    positive_ray_hint: Tuple[int, int]
    name: str = ""
    basis_names: Tuple[str, str] = ("x", "y")

    def __post_init__(self):
        if self.pic.rank != 2 or signature(self.pic) != (1, 1):
            raise ValidationError("cone context needs a rank-2 lattice of signature (1, 1)")
        if self.og10_embedding.source != self.pic:
            raise ValidationError("embedding source differs from the Picard lattice")
        if not self.og10_embedding.primitive:
            raise ValidationError("embedding into the OG10 lattice is not primitive")
        hint = coords_of(self.pic, self.positive_ray_hint)
        object.__setattr__(self, "positive_ray_hint", hint)
        if self.pic.square(hint) <= 0:
            raise NotPositive("positive_ray_hint must have positive square")

    @property
    def embedding(self) -> Tuple:
        return tuple(self.og10_embedding.image(c) for c in linalg.identity(2))

    def in_positive_cone(self, v) -> bool:
        v = tuple(v)
        return self.pic.square(v) > 0 and self.pic.pair(v, self.positive_ray_hint) > 0

    def name_of(self, v: Sequence[int]) -> str:
        terms = []
        for coeff, nm in zip(v, self.basis_names):
            if coeff == 0:
                continue
            mag = "" if abs(coeff) == 1 else str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            terms.append((sign, mag + nm))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += sign + t
        return out


@dataclass(frozen=True)
class Ray:
    direction: Direction
    kind: str  # "WallRay", "PexWall" or "IsotropicBoundary"
    wall_class: Optional[Tuple[int, int]] = None
    square: Optional[int] = None
    divisibility: Optional[int] = None
    wall_type: Optional[str] = None

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(x, QuadSurd) or x.is_rational() for x in self.direction)

    def direction_strings(self) -> Tuple[str, str]:
        return tuple(str(x) for x in self.direction)

    def to_json(self) -> dict:
        out = {"direction": list(self.direction_strings()), "kind": self.kind}
        if self.wall_class is not None:
            out.update({"class": list(self.wall_class), "square": self.square,
                        "divisibility": self.divisibility, "type": self.wall_type})
        return out


def _rational_or_surd(x):
    if isinstance(x, QuadSurd) and x.is_rational():
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def isotropic_boundary(ctx: ConeContext) -> Tuple[Ray, Ray]:
    """The two isotropic rays bounding the component containing the hint.

    Returns (r1, r2) with the hint strictly between them counterclockwise.
    """
    a, b, c = _form(ctx.pic)
    disc = b * b - a * c
    dirs = []
    u = rational_isotropic_vector(ctx.pic)
    if u is not None:
        # the other isotropic line: (x, y) with a x + b y ... pairs to zero with itself
        if c == 0:
            other = linalg.primitive_part((2 * b, -a))
        else:
            r = isqrt(disc)
            other = linalg.primitive_part((c, -b - r))
        dirs = [tuple(u), tuple(other)]
    else:
        for s in (1, -1):
            y = QuadSurd(Fraction(-b, c), Fraction(s, c), disc)
            dirs.append((QuadSurd(Fraction(1)), y))
    oriented = []
    hint = ctx.positive_ray_hint
    for dvec in dirs:
        # (d, hint) > 0 picks the ray in the closure of the component
        val = dvec[0] * (a * hint[0] + b * hint[1]) + dvec[1] * (b * hint[0] + c * hint[1])
        if _sign(val) < 0:
            dvec = (-dvec[0], -dvec[1])
        oriented.append(tuple(_rational_or_surd(x) for x in dvec))
    r1, r2 = oriented
    if _sign(cross(r1, hint)) < 0:
        r1, r2 = r2, r1
    return Ray(r1, "IsotropicBoundary"), Ray(r2, "IsotropicBoundary")


def perp_ray(ctx: ConeContext, d: Sequence[int]) -> Tuple[int, int]:
    g = linalg.matvec(ctx.pic.gram, d)
    x = linalg.primitive_part((g[1], -g[0]))
    if ctx.pic.pair(x, ctx.positive_ray_hint) < 0:
        x = (-x[0], -x[1])
    return x


def _order(rays: Iterable[Ray]) -> List[Ray]:
    def cmp(r, s):
        return -_sign(cross(r.direction, s.direction))
    return sorted(rays, key=functools.cmp_to_key(cmp))


ALL_WALL_TYPES = frozenset(WallType)
PEX_WALL_TYPES = frozenset({WallType.NegTwoDivOne, WallType.NegSixDivThree})


def wall_rays(ctx: ConeContext, types: Iterable[WallType] = ALL_WALL_TYPES,
              bound: int = 50) -> List[Ray]:
    """Rays D-perp for the classes D of the requested (square, divisibility) types."""
    rays = {}
    complete = True
    for wt in sorted(set(types), key=lambda t: t.value):
        sols, ok = solve_norm_equation(ctx.pic, wt.square, bound)
        complete &= ok
        for d in sols:
            div = ambient_class(ctx, d).divisibility
            if div != wt.divisibility:
                continue
            direction = perp_ray(ctx, d)
            pex = isinstance(classify_pex(wt.square, div), PexType)
            ray = Ray(direction, "PexWall" if pex else "WallRay", d, wt.square, div, wt.name)
            prev = rays.get(direction)
            if prev is None or (prev.square, prev.wall_class) < (ray.square, ray.wall_class):
                rays[direction] = ray
    if not complete:
        warnings.warn(IncompleteEnumeration(
            f"norm equations for {ctx.name or 'context'} searched only up to radius {bound}"))
    return _order(rays.values())


@dataclass(frozen=True)
class ChamberStructure:
    context: ConeContext
    rays: Tuple[Ray, ...]
    chambers: Tuple[Tuple[int, int], ...]
    selected: Optional[int] = None
    complete: bool = True

    @property
    def walls(self) -> Tuple[Ray, ...]:
        return self.rays[1:-1]

    def locate(self, v: Sequence[int]) -> int:
        """Index of the open chamber containing v; OnWall if v lies on a wall."""
        v = coords_of(self.context.pic, v)
        if not self.context.in_positive_cone(v):
            raise NotPositive(f"{list(v)} is not in the chosen positive cone component")
        for r in self.walls:
            if _sign(cross(r.direction, v)) == 0:
                raise OnWall(f"{list(v)} lies on the wall orthogonal to {list(r.wall_class)}",
                             wall=list(r.wall_class))
        for i, (lo, hi) in enumerate(self.chambers):
            if (_sign(cross(self.rays[lo].direction, v)) > 0
                    and _sign(cross(v, self.rays[hi].direction)) > 0):
                return i
        raise AssertionError("class is in the positive cone but in no chamber")

    def selected_bounds(self) -> Tuple[Ray, Ray]:
        if self.selected is None:
            raise ValidationError("no chamber selected")
        lo, hi = self.chambers[self.selected]
        return self.rays[lo], self.rays[hi]

    def closed_selected_contains(self, v: Sequence[int]) -> bool:
        lo, hi = self.selected_bounds()
        v = tuple(v)
        if not any(v):
            return True
        return _sign(cross(lo.direction, v)) >= 0 and _sign(cross(v, hi.direction)) >= 0

    def to_json(self) -> dict:
        out = {
            "context": self.context.name,
            "gram": [list(r) for r in self.context.pic.gram],
            "rays": [r.to_json() for r in self.rays],
            "chambers": [list(c) for c in self.chambers],
            "selected": self.selected,
            "complete": self.complete,
        }
        if self.selected is not None:
            lo, hi = self.selected_bounds()
            out["selected_bounds"] = [lo.to_json(), hi.to_json()]
        return out


def chambers(ctx: ConeContext, rays: Sequence[Ray], complete: bool = True) -> ChamberStructure:
    r1, r2 = isotropic_boundary(ctx)
    inner = [r for r in _order(rays)
             if _sign(cross(r1.direction, r.direction)) > 0
             and _sign(cross(r.direction, r2.direction)) > 0]
    allrays = (r1,) + tuple(inner) + (r2,)
    ch = tuple((i, i + 1) for i in range(len(allrays) - 1))
    return ChamberStructure(ctx, allrays, ch, None, complete)


def _structure(ctx: ConeContext, types, ample_side, bound: int) -> ChamberStructure:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rays = wall_rays(ctx, types, bound)
    complete = not any(issubclass(w.category, IncompleteEnumeration) for w in caught)
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    st = chambers(ctx, rays, complete)
    if ample_side is None:
        return st
    idx = st.locate(ample_side)
    return ChamberStructure(ctx, st.rays, st.chambers, idx, complete)


def movable_chamber(ctx: ConeContext, ample_side=None, bound: int = 50) -> ChamberStructure:
    """Chambers cut out by prime exceptional walls; the one holding ample_side is selected."""
    side = ctx.positive_ray_hint if ample_side is None else ample_side
    return _structure(ctx, PEX_WALL_TYPES, side, bound)


def kahler_chamber(ctx: ConeContext, ample_side=None, bound: int = 50) -> ChamberStructure:
    """Chambers cut out by all wall divisors; the one holding ample_side is selected."""
    side = ctx.positive_ray_hint if ample_side is None else ample_side
    return _structure(ctx, ALL_WALL_TYPES, side, bound)


# --- named contexts -----------------------------------------------------------------

def _og10_images(*vecs) -> Tuple[Tuple[int, ...], ...]:
    out = []
    for parts in vecs:
        c = [0] * 24
        for k, val in parts.items():
            c[k] = val
        out.append(tuple(c))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def ij_context() -> ConeContext:
    """P_V = [[-2, 1], [1, 0]] with T = e - f and b = f in the first U summand."""
    pic = make_lattice([[-2, 1], [1, 0]], "P_V")
    images = _og10_images({0: 1, 1: -1}, {1: 1})
    emb = LatticeEmbedding(pic, og10_lattice(), images)
    return ConeContext(pic, emb, (1, 4), "ij", ("T", "b"))


# Frozen coordinates for the twisted lattice: T = 3e - 2f + (e1 + 2e2) with
# (e1, e2) the A2(-1) basis, b = f, all in U + A2(-1).  Checked on load.
IJ_TWISTED_IMAGES = _og10_images({0: 3, 1: -2, 22: 1, 23: 2}, {1: 1})


@functools.lru_cache(maxsize=None)
def ij_twisted_context() -> ConeContext:
    """P_V^t = [[-18, 3], [3, 0]]; T - b and T + 2b have divisibility 3."""
    pic = make_lattice([[-18, 3], [3, 0]], "P_V^t")
    emb = LatticeEmbedding(pic, og10_lattice(), IJ_TWISTED_IMAGES)
    ctx = ConeContext(pic, emb, (1, 8), "ij-twisted", ("T", "b"))
    expected = {(1, -1): 3, (1, 2): 3, (1, 0): 1, (0, 1): 1}
    for v, d in expected.items():
        if ambient_class(ctx, v).divisibility != d:
            raise AssertionError(f"twisted embedding gives wrong divisibility for {v}")
    return ctx


@functools.lru_cache(maxsize=None)
def u_context() -> ConeContext:
    """Pic = U = <e, f> placed on the first U summand."""
    pic = hyperbolic_plane()
    emb = LatticeEmbedding(pic, og10_lattice(), _og10_images({0: 1}, {1: 1}))
    return ConeContext(pic, emb, (1, 3), "U", ("e", "f"))


NAMED_CONTEXTS = {"ij": ij_context, "ij-twisted": ij_twisted_context, "U": u_context}


def search_twisted_embedding(radius: int = 3) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All embeddings of P_V^t with b = f and T in the box over U + A2(-1).

    Used as an independent check on the frozen coordinates: T ranges over
    (u_e, u_f, a1, a2) with |coordinate| <= radius.
    """
    og = og10_lattice()
    sub = [[og.gram[i][j] for j in (0, 1, 22, 23)] for i in (0, 1, 22, 23)]
    # (T, f) = u_e must equal 3
    hits = _kernels.norm_search(sub, radius, -18, [[1, 0, 0, 0]], [3], [3])
    out = []
    for t in hits:
        coords = [0] * 24
        coords[0], coords[1], coords[22], coords[23] = (int(x) for x in t)
        b = [0] * 24
        b[1] = 1
        tt = og.element(coords)
        if (tt - og.element(b)).divisibility == 3 and (tt + 2 * og.element(b)).divisibility == 3:
            out.append((tuple(coords), tuple(b)))
    return out


# --- cubic fourfolds -----------------------------------------------------------------

# Order in which the four wall types are matched to Hassett divisors in the
# uniqueness argument for intermediate jacobian compactifications.
LISTED_HASSETT_PAIRING = {2: (-2, 1), 6: (-6, 3), 8: (-24, 3), 12: (-4, 1)}


@dataclass(frozen=True)
class CompactificationVerdict:
    unique: bool
    hassett_discriminant: int
    perp_generator: Tuple[int, int]
    perp_square: int
    obstruction_square: int
    obstruction_divisibility: int
    obstruction_type: str

    def to_json(self) -> dict:
        listed = LISTED_HASSETT_PAIRING.get(self.hassett_discriminant)
        return {
            "unique": self.unique,
            "hassett_discriminant": self.hassett_discriminant,
            "perp_generator": list(self.perp_generator),
            "perp_square": self.perp_square,
            "obstruction": {
                "square": self.obstruction_square,
                "divisibility": self.obstruction_divisibility,
                "type": self.obstruction_type,
            },
            "listed_pairing": None if listed is None else list(listed),
        }


def unique_compactification(hassett_gram: Sequence[Sequence[int]]) -> CompactificationVerdict:
    """Decide whether <T, b>-perp can contain a wall divisor.

    The generator K' of h^2-perp in <h^2, K> is c1 h^2 + c2 K with
    c2 = 3 / gcd(3, (h^2, K)).  Its divisibility in the primitive cohomology
    is |c2|, and the anti-similitude with constant -1 sends it to a class of
    square -(K')^2 with the same divisibility.
    """
    try:
        g = linalg.as_matrix(hassett_gram)
    except (TypeError, ValueError) as exc:
        raise NotCubicGram(f"not an integer matrix: {exc}")
    if len(g) != 2 or any(len(r) != 2 for r in g) or g[0][1] != g[1][0]:
        raise NotCubicGram("expected a symmetric 2x2 matrix")
    if g[0][0] != 3:
        raise NotCubicGram("the square of h^2 must be 3")
    det = linalg.determinant(g)
    if det <= 0:
        raise NotCubicGram("lattice is not positive definite")
    m, k = g[0][1], g[1][1]
    gg = gcd(3, m)
    c1, c2 = -m // gg, 3 // gg
    n = 3 * c1 * c1 + 2 * c1 * c2 * m + c2 * c2 * k
    sq, div = -n, abs(c2)
    if div == 3 and not div3_square_congruence(sq, 3):
        raise AssertionError("obstruction class violates the mod 18 constraint")
    wt = classify_wall(sq, div)
    return CompactificationVerdict(wt is NotAWall, det, (c1, c2), n, sq, div, wt.name)


# --- rendering ------------------------------------------------------------------------

def to_csv(st: ChamberStructure) -> str:
    lines = ["index,kind,x,y,class,square,divisibility,type"]
    for i, r in enumerate(st.rays):
        x, y = r.direction_strings()
        cls = "" if r.wall_class is None else " ".join(str(t) for t in r.wall_class)
        lines.append(",".join([str(i), r.kind, x, y, cls,
                               "" if r.square is None else str(r.square),
                               "" if r.divisibility is None else str(r.divisibility),
                               r.wall_type or ""]))
    return "\n".join(lines) + "\n"


def _axis_coords(st: ChamberStructure, direction) -> Tuple[float, float]:
    """Coefficients of a direction on the two boundary rays, scaled to sum 1."""
    r1, r2 = st.rays[0].direction, st.rays[-1].direction
    det = float(cross(r1, r2))
    x = [float(t) for t in direction]
    a = (x[0] * float(r2[1]) - x[1] * float(r2[0])) / det
    b = (float(r1[0]) * x[1] - float(r1[1]) * x[0]) / det
    s = a + b
    return a / s, b / s


def _label(st: ChamberStructure, r: Ray) -> str:
    ctx = st.context
    if r.kind == "IsotropicBoundary":
        if r.is_rational:
            return ctx.name_of(tuple(int(_rational_or_surd(x)) for x in r.direction))
        return "(" + ", ".join(r.direction_strings()) + ")"
    return f"({ctx.name_of(r.wall_class)})⊥"


def to_svg(st: ChamberStructure, size: int = 400) -> str:
    """Cone diagram: the boundary rays are the axes, walls are segments from
    the origin, the selected chamber is shaded."""
    pad = 60
    scale = size - 2 * pad
    ox, oy = pad, size - pad

    def pt(direction) -> Tuple[float, float]:
        a, b = _axis_coords(st, direction)
        # first boundary ray along the vertical axis, second along the horizontal
        return round(ox + scale * b, 6), round(oy - scale * a, 6)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    out.append(f'<title>{st.context.name} chambers</title>')
    if st.selected is not None:
        lo, hi = st.selected_bounds()
        (x1, y1), (x2, y2) = pt(lo.direction), pt(hi.direction)
        out.append(f'<polygon points="{ox},{oy} {x1},{y1} {x2},{y2}" '
                   f'fill="#cfe3ff" stroke="none"/>')
    for r in st.rays:
        x, y = pt(r.direction)
        if r.kind == "IsotropicBoundary":
            style = 'stroke="black" stroke-width="2"'
        elif r.kind == "PexWall":
            style = 'stroke="#444" stroke-dasharray="6,4"'
        else:
            style = 'stroke="#b00" stroke-width="1.5"'
        out.append(f'<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" {style}/>')
        out.append(f'<text x="{x + 4}" y="{y - 4}" font-size="12" '
                   f'font-family="sans-serif">{_label(st, r)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
