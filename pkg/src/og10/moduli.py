"""Picard lattices of the symplectic resolutions of K3 moduli spaces M_v with
v = 2w, w^2 = 2, and the numerical criteria for their contractions.

Classes of Pic(M~_v) are handled in two coordinate systems:

* lattice coordinates: integer coordinates in the basis of
  ``ModuliPicard.lattice``;
* frame coordinates: rational coefficients on the chosen basis of the
  algebraic part of v-perp followed by the coefficient of sigma, the class
  of the exceptional divisor.  Curve classes are reported in this frame
  because it does not depend on how the half classes are chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import _kernels, linalg
from .embedding import LatticeEmbedding
from .errors import (EmbeddingNotFound, Inconsistent, NotIntegral, NotOG10Vector, NotPositive,
                     NotProportionalToWall, RankTooLarge, ValidationError)
from .lattice import (EmbeddedClass, Lattice, Sublattice, compose, coords_of, hyperbolic_plane,
                      mukai_algebraic, og10_lattice, orthogonal_complement)
from .walls import NotAWall, wall_type

SIGMA_SQUARE = -6


@dataclass(frozen=True)
class MukaiVector:
    """(r, c, s) with c given in coordinates of Pic(S)."""

    r: int
    c: Tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def coords(self) -> Tuple[int, ...]:
        return (self.r,) + self.c + (self.s,)

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "MukaiVector":
        coords = tuple(coords)
        return cls(coords[0], coords[1:-1], coords[-1])

    def square(self, pic: Lattice) -> int:
        return pic.square(self.c) - 2 * self.r * self.s

    def pair(self, pic: Lattice, other: "MukaiVector") -> int:
        return pic.pair(self.c, other.c) - self.r * other.s - other.r * self.s

    def to_json(self) -> dict:
        return {"r": self.r, "c": list(self.c), "s": self.s}


@dataclass(frozen=True)
class ModuliPicard:
    pic_S: Lattice
    v: MukaiVector
    mukai: Lattice
    vperp_basis: Tuple[Tuple[int, ...], ...]
    frame_rows: Tuple[Tuple[Fraction, ...], ...]
    lattice: Lattice
    sigma: EmbeddedClass
    half_class: Optional[EmbeddedClass]
    og10_embedding: LatticeEmbedding = field(repr=False)

    @property
    def frame_rank(self) -> int:
        return len(self.vperp_basis) + 1

    @property
    def frame_gram(self) -> Tuple[Tuple[int, ...], ...]:
        k = len(self.vperp_basis)
        g = [[self.mukai.pair(a, b) for b in self.vperp_basis] + [0] for a in self.vperp_basis]
        g.append([0] * k + [SIGMA_SQUARE])
        return linalg.as_matrix(g)

    def frame_pair(self, u: Sequence, w: Sequence) -> Fraction:
        return linalg.dot(u, linalg.matvec(self.frame_gram, w))

    def frame_unit(self, i: int) -> Tuple[int, ...]:
        return tuple(int(k == i) for k in range(self.frame_rank))

    @property
    def sigma_frame(self) -> Tuple[int, ...]:
        return self.frame_unit(self.frame_rank - 1)

    def to_frame(self, v) -> Tuple[Fraction, ...]:
        c = v.coords if isinstance(v, EmbeddedClass) else tuple(v)
        return tuple(Fraction(x) for x in linalg.vecmat(c, self.frame_rows))

    def from_frame_rational(self, f: Sequence) -> Tuple[Fraction, ...]:
        x = linalg.solve_rational(linalg.transpose(self.frame_rows), tuple(Fraction(t) for t in f))
        if x is None:
            raise Inconsistent("frame vector has the wrong length")
        return x

    def from_frame(self, f: Sequence) -> EmbeddedClass:
        x = self.from_frame_rational(f)
        if any(t.denominator != 1 for t in x):
            raise NotIntegral(f"class {[str(t) for t in f]} is not in Pic")
        return EmbeddedClass(self.lattice, tuple(int(t) for t in x))

    def frame_of_mukai(self, m: Sequence, sigma_coeff=0) -> Tuple[Fraction, ...]:
        """Frame coordinates of m + sigma_coeff * sigma for m rational in v-perp."""
        coeffs = linalg.solve_rational(linalg.transpose(self.vperp_basis), tuple(m))
        if coeffs is None:
            raise Inconsistent(f"{list(m)} is not orthogonal to v")
        return tuple(coeffs) + (Fraction(sigma_coeff),)

    def from_mukai(self, m: Sequence, sigma_coeff=0) -> EmbeddedClass:
        return self.from_frame(self.frame_of_mukai(m, sigma_coeff))

    def mukai_part(self, v) -> Tuple[Tuple[Fraction, ...], Fraction]:
        f = self.to_frame(v)
        m = linalg.vecmat(f[:-1], self.vperp_basis)
        return tuple(Fraction(x) for x in m), f[-1]

    def vperp_classes(self) -> Tuple[EmbeddedClass, ...]:
        return tuple(self.from_frame(self.frame_unit(i)) for i in range(len(self.vperp_basis)))

    def to_json(self) -> dict:
        return {
            "pic_S": self.pic_S.to_json(),
            "v": self.v.to_json(),
            "vperp_basis": [list(b) for b in self.vperp_basis],
            "frame_rows": [[str(x) for x in row] for row in self.frame_rows],
            "gram": [list(r) for r in self.lattice.gram],
            "sigma": list(self.sigma.coords),
            "half_class": None if self.half_class is None else list(self.half_class.coords),
            "og10_images": [list(c) for c in self.og10_embedding.images],
        }


# --- construction ---------------------------------------------------------------

def _check_og10_vector(mukai: Lattice, v: MukaiVector) -> Tuple[int, ...]:
    vc = coords_of(mukai, v.coords)
    if mukai.square(vc) != 8 or linalg.vector_gcd(vc) != 2:
        raise NotOG10Vector(
            f"need v = 2w with w primitive and w^2 = 2; got v = {list(vc)} "
            f"with v^2 = {mukai.square(vc)}")
    return tuple(x // 2 for x in vc)


def moduli_picard(pic_S: Lattice, v: MukaiVector,
                  vperp_basis: Optional[Sequence[Sequence[int]]] = None,
                  label: Optional[str] = None) -> ModuliPicard:
    """Pic of the resolution: v-perp (algebraic part) plus sigma and half classes.

    A class alpha of v-perp has divisibility 2 in the full v-perp exactly when
    it is congruent to w modulo 2 * Mukai lattice, so every such class is
    alpha0 plus twice a class of v-perp, where alpha0 = w - 2 lambda and
    (lambda, w) = 1.  Adjoining (alpha0 + sigma)/2 therefore adjoins all of
    them.  No lambda exists when (w, -) is even on the algebraic part, and then
    there are no half classes.
    """
    mukai = mukai_algebraic(pic_S)
    w = _check_og10_vector(mukai, v)
    vc = v.coords
    perp = orthogonal_complement(mukai, Sublattice(mukai, (vc,)))
    if vperp_basis is not None:
        given = Sublattice(mukai, tuple(tuple(b) for b in vperp_basis))
        if not given.span_equals(perp):
            raise Inconsistent("supplied classes are not a basis of v-perp")
        basis = given.basis
    else:
        basis = perp.basis
    k = len(basis)
    gw = linalg.matvec(mukai.gram, w)
    lam = linalg.solve_integer_left([[x] for x in gw], [1])
    rows: List[Tuple[Fraction, ...]] = [tuple(Fraction(int(i == j)) for j in range(k + 1))
                                        for i in range(k)]
    if lam is None:
        rows.append(tuple(Fraction(int(j == k)) for j in range(k + 1)))
        alpha0 = None
    else:
        alpha = tuple(a - 2 * b for a, b in zip(w, lam))
        coeffs = linalg.solve_rational(linalg.transpose(basis), alpha)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            raise Inconsistent("alpha0 does not lie in v-perp")
        alpha0 = tuple(int(c) for c in coeffs)
        rows.append(tuple(Fraction(c, 2) for c in alpha0) + (Fraction(1, 2),))
    frame_gram = [[mukai.pair(a, b) for b in basis] + [0] for a in basis]
    frame_gram.append([0] * k + [SIGMA_SQUARE])
    gram = linalg.matmul(linalg.matmul(rows, frame_gram), linalg.transpose(rows))
    if any(x.denominator != 1 for row in gram for x in row):
        raise Inconsistent("half class pairs non-integrally")
    lattice = Lattice(tuple(tuple(int(x) for x in row) for row in gram),
                      label or f"Pic(M~_{v.coords})")
    if alpha0 is None:
        sigma = EmbeddedClass(lattice, tuple(int(i == k) for i in range(k + 1)))
        half = None
    else:
        sigma = EmbeddedClass(lattice, tuple(-c for c in alpha0) + (2,))
        half = EmbeddedClass(lattice, tuple(int(i == k) for i in range(k + 1)))
    emb = _og10_certificate(pic_S, mukai, w, basis, tuple(rows), lattice)
    return ModuliPicard(pic_S, v, mukai, tuple(basis), tuple(rows), lattice, sigma, half, emb)


def _model_embedding(pic_S: Lattice, mukai: Lattice) -> LatticeEmbedding:
    """A primitive embedding of the algebraic Mukai lattice into U^4.

    The E8(-1)^2 part of the Mukai lattice plays no role and is left out.
    """
    p = pic_S.rank
    if p > 2:
        raise RankTooLarge("Picard lattices of rank at most 2 are supported")
    model = compose([(hyperbolic_plane(), 1)] * 4, label="U^4")
    imgs = []
    r_img = [0] * 8
    r_img[0] = 1
    imgs.append(tuple(r_img))
    g = pic_S.gram
    if p >= 1:
        x1 = [0] * 8
        x1[2], x1[3] = 1, g[0][0] // 2
        imgs.append(tuple(x1))
    if p == 2:
        x2 = [0] * 8
        x2[3], x2[4], x2[5] = g[0][1], 1, g[1][1] // 2
        imgs.append(tuple(x2))
    s_img = [0] * 8
    s_img[1] = -1
    imgs.append(tuple(s_img))
    emb = LatticeEmbedding(mukai, model, tuple(imgs))
    if not emb.primitive:
        raise EmbeddingNotFound("model embedding of the Mukai lattice is not primitive")
    return emb


def _first_isotropic(gram, max_radius: int = 3, lin=(), lo=(), hi=(), target: int = 0):
    for radius in range(1, max_radius + 1):
        for x in _kernels.norm_search(gram, radius, target, lin, lo, hi):
            x = tuple(int(t) for t in x)
            if any(x) and linalg.vector_gcd(x) == 1:
                return x
    return None


def hyperbolic_splitting(gram: Sequence[Sequence[int]]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Split an even unimodular indefinite lattice with a U^k shape into planes.

    Returns pairs (z, t) of coordinate vectors with z^2 = t^2 = 0, (z, t) = 1,
    mutually orthogonal across pairs.
    """
    lat = Lattice(linalg.as_matrix(gram))
    n = lat.rank
    current = linalg.identity(n)
    planes = []
    while current:
        sub = linalg.matmul(linalg.matmul(current, lat.gram), linalg.transpose(current))
        z = _first_isotropic(sub)
        if z is None:
            raise EmbeddingNotFound("no small isotropic vector while splitting")
        gz = linalg.matvec(sub, z)
        t = linalg.solve_integer_left([[x] for x in gz], [1])
        if t is None:
            raise EmbeddingNotFound("lattice is not unimodular")
        qt = linalg.dot(t, linalg.matvec(sub, t))
        t = tuple(a - (qt // 2) * b for a, b in zip(t, z))
        zc, tc = linalg.vecmat(z, current), linalg.vecmat(t, current)
        planes.append((tuple(zc), tuple(tc)))
        cols = linalg.transpose([linalg.matvec(sub, z), linalg.matvec(sub, t)])
        rest = linalg.integer_kernel(cols)
        current = tuple(tuple(linalg.vecmat(r, current)) for r in rest)
    return planes


def _og10_certificate(pic_S, mukai, w, basis, rows, lattice) -> LatticeEmbedding:
    """Explicit isometric coordinates of Pic(M~) inside U^3 + E8(-1)^2 + A2(-1).

    Inside U^4 ⊇ image of the Mukai lattice, pick y isotropic with (y, w) = 1.
    Then <y, w - y> is a hyperbolic plane containing w, delta = w - 2y spans
    w-perp inside it (delta^2 = -2) and the rest of w-perp is the unimodular
    complement, split into three hyperbolic planes.  Finally (delta -+ sigma)/2
    form an A2(-1) basis, which absorbs the half classes.
    """
    model_emb = _model_embedding(pic_S, mukai)
    model = model_emb.target
    wm = model_emb.image(w).coords
    gwm = linalg.matvec(model.gram, wm)
    y = _first_isotropic(model.gram, lin=[gwm], lo=[1], hi=[1])
    if y is None:
        raise EmbeddingNotFound("no isotropic y with (y, w) = 1 in the search box")
    delta = tuple(a - 2 * b for a, b in zip(wm, y))
    uprime = Sublattice(model, (y, tuple(a - b for a, b in zip(wm, y))))
    comp = orthogonal_complement(model, uprime).basis
    comp_gram = linalg.matmul(linalg.matmul(comp, model.gram), linalg.transpose(comp))
    planes = [(linalg.vecmat(z, comp), linalg.vecmat(t, comp))
              for z, t in hyperbolic_splitting(comp_gram)]
    if len(planes) != 3:
        raise EmbeddingNotFound("complement did not split into three planes")
    og = og10_lattice()
    images = []
    for row in rows:
        frame_vperp, t_sigma = row[:-1], row[-1]
        m = linalg.vecmat(frame_vperp, basis)
        xm = model_emb.image_rational(m)
        coords = [Fraction(0)] * 24
        for j, (z, tp) in enumerate(planes):
            coords[2 * j] = model.pair(xm, tp)
            coords[2 * j + 1] = model.pair(xm, z)
        c = -model.pair(xm, delta) / 2
        coords[22], coords[23] = c - t_sigma, c + t_sigma
        if any(Fraction(x).denominator != 1 for x in coords):
            raise EmbeddingNotFound("basis class has non-integral OG10 coordinates")
        images.append(tuple(int(x) for x in coords))
    return LatticeEmbedding(lattice, og, tuple(images))


def og10_embedding_certificate(picM: ModuliPicard) -> LatticeEmbedding:
    return picM.og10_embedding


# --- curve classes and walls ------------------------------------------------------

def curve_class(picM: ModuliPicard, pairings: Sequence[Tuple[object, int]]) -> Tuple[Fraction, ...]:
    """Rational class (frame coordinates) with prescribed pairings.

    Each pairing is (class, value) where class is an EmbeddedClass of
    ``picM.lattice`` or a frame-coordinate vector.
    """
    rows, rhs = [], []
    for cls, value in pairings:
        f = picM.to_frame(cls) if isinstance(cls, EmbeddedClass) else tuple(Fraction(x) for x in cls)
        if len(f) != picM.frame_rank:
            raise ValidationError(f"class {cls} has the wrong length")
        rows.append(linalg.vecmat(f, picM.frame_gram))
        rhs.append(Fraction(value))
    if linalg.rank(rows) != picM.frame_rank:
        raise Inconsistent("pairings do not determine a unique class")
    x = linalg.solve_rational(rows, rhs)
    if x is None:
        raise Inconsistent("prescribed pairings are inconsistent")
    return x


def dual_wall_divisor(picM: ModuliPicard, r: Sequence) -> EmbeddedClass:
    """Primitive integral class on the ray of r (frame coordinates), checked to be a wall."""
    f = tuple(Fraction(x) for x in r)
    if not any(f):
        raise ValidationError("zero class")
    d = EmbeddedClass(picM.lattice, linalg.primitive_part(picM.from_frame_rational(f)))
    if d.square >= 0 or wall_type(picM, d) is NotAWall:
        raise NotProportionalToWall(
            f"primitive class on the ray has square {d.square} and is not a wall divisor")
    return d


# --- contraction search ---------------------------------------------------------

@dataclass(frozen=True)
class ContractionVerdict:
    kind: str
    witness: Optional[MukaiVector]
    search_complete: bool
    witnesses: Tuple[Tuple[Tuple[int, ...], int], ...] = ()
    bound: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": None if self.witness is None else self.witness.to_json(),
            "search_complete": self.search_complete,
            "bound": self.bound,
            "witnesses": [{"s": list(s), "pair_v": p} for s, p in self.witnesses],
        }


def ellipsoid_points(a: Sequence[Sequence], center: Sequence, radius) -> List[Tuple[int, ...]]:
    """Integer n with (n - c)^T A (n - c) <= radius for positive definite rational A.

    Exact Fincke-Pohst: A is written as sum d_i (x_i + sum_{j>i} mu_ij x_j)^2
    and coordinates are enumerated from the last one down.
    """
    n = len(a)
    A = [[Fraction(x) for x in row] for row in a]
    c = [Fraction(x) for x in center]
    radius = Fraction(radius)
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i] - sum(d[k] * mu[k][i] ** 2 for k in range(i))
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = (A[i][j] - sum(d[k] * mu[k][i] * mu[k][j] for k in range(i))) / d[i]
    out: List[Tuple[int, ...]] = []
    x = [Fraction(0)] * n
    pts = [0] * n

    def rec(i: int, rem: Fraction):
        if i < 0:
            out.append(tuple(pts))
            return
        m = c[i] - sum(mu[i][j] * x[j] for j in range(i + 1, n))
        span = isqrt(int(rem / d[i])) + 1
        base = m.numerator // m.denominator
        for cand in range(base - span - 1, base + span + 2):
            val = d[i] * (cand - m) ** 2
            if val <= rem:
                pts[i] = cand
                x[i] = cand - c[i]
                rec(i - 1, rem - val)
        x[i] = Fraction(0)

    if n == 0:
        return [()] if radius >= 0 else []
    rec(n - 1, radius)
    return sorted(out)


def _nonzero_picard_part(s: Sequence[int]) -> bool:
    return any(s[1:-1])


def _exact_mz_solutions(mukai: Lattice, h: Tuple[int, ...], v: Tuple[int, ...]):
    """Every s with s^2 = -2, (s, h) = 0, 0 <= (s, v) <= 4, when this set is finite."""
    g = mukai.gram
    cols = linalg.transpose([linalg.matvec(g, h), linalg.matvec(g, v)])
    kernel = linalg.integer_kernel(cols)
    found = []
    for k in range(5):
        s0 = linalg.solve_integer_left(cols, [0, k])
        if s0 is None:
            continue
        if not kernel:
            if mukai.square(s0) == -2:
                found.append(tuple(s0))
            continue
        ngn = linalg.matmul(linalg.matmul(kernel, g), linalg.transpose(kernel))
        A = [[-x for x in row] for row in ngn]
        beta = linalg.matvec(kernel, linalg.matvec(g, s0))
        center = linalg.solve_rational(A, beta)
        radius = 2 + mukai.square(s0) + linalg.dot(center, linalg.matvec(A, center))
        if radius < 0:
            continue
        for n_ in ellipsoid_points(A, center, radius):
            s = tuple(a + b for a, b in zip(s0, linalg.vecmat(n_, kernel)))
            if mukai.square(s) == -2:
                found.append(s)
    return sorted(set(found))


def mz_contraction_type(pic_S: Lattice, v: MukaiVector, h0: Sequence[int],
                        bound: int = 10) -> ContractionVerdict:
    """Search for s in the algebraic Mukai lattice with s^2 = -2 and (s, h0) = 0.

    (s, v) = 0 gives a divisorial contraction, 0 < (s, v) <= 4 a small one.
    Classes with zero Picard component pair to zero with every (0, h, 0) and
    do not cut out a wall through h0, so they are skipped.
    """
    mukai = mukai_algebraic(pic_S)
    hc = coords_of(pic_S, h0)
    if pic_S.square(hc) <= 0:
        raise NotPositive("h0 must have positive square")
    if bound <= 0:
        raise NotPositive("bound must be positive")
    h = (0,) + hc + (0,)
    vc = coords_of(mukai, v.coords)
    g = mukai.gram
    lin = [linalg.matvec(g, h), linalg.matvec(g, vc)]
    raw = _kernels.norm_search(g, bound, -2, lin, [0, 0], [0, 4])
    box = sorted({tuple(int(t) for t in s) for s in raw if _nonzero_picard_part(s)})
    complete = False
    hv = [[mukai.pair(h, h), mukai.pair(h, vc)], [mukai.pair(vc, h), mukai.pair(vc, vc)]]
    if hv[0][0] > 0 and linalg.determinant(hv) > 0:
        exact = [s for s in _exact_mz_solutions(mukai, h, vc) if _nonzero_picard_part(s)]
        inside = [s for s in exact if max(abs(x) for x in s) <= bound]
        if inside != box:
            raise AssertionError("box search disagrees with exact enumeration")
        complete = len(inside) == len(exact)
    pairs = tuple((s, mukai.pair(s, vc)) for s in box)
    div = [s for s, p in pairs if p == 0]
    small = [s for s, p in pairs if p > 0]
    if div:
        kind, witness = "Divisorial", min(div)
    elif small:
        kind, witness = "SmallContraction", min(small)
    else:
        kind, witness = "NoWallFound", None
    return ContractionVerdict(kind, None if witness is None else MukaiVector.from_coords(witness),
                              complete, pairs, bound)
