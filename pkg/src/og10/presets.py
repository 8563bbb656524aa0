"""Named end-to-end reproductions.  Each returns computed values, the values
expected from the literature, and whether they agree."""

from __future__ import annotations

from fractions import Fraction as F
from typing import Callable, Dict

from .cones import (ij_context, ij_twisted_context, isotropic_boundary, kahler_chamber,
                    movable_chamber, unique_compactification)
from .errors import UnknownPreset
from .lattice import make_lattice, og10_vector
from .moduli import MukaiVector, curve_class, dual_wall_divisor, moduli_picard, mz_contraction_type
from .walls import (ambient_class, half_integral_split, lagrangian_candidate, sigma_projection_class,
                    wall_type)


def _fr(v) -> list:
    return [str(F(x)) for x in v]


def _result(name: str, computed: dict, expected: dict) -> dict:
    return {"preset": name, "computed": computed, "expected": expected,
            "match": computed == expected}


def degree_two_k3():
    return make_lattice([[2]], "<H>, H^2=2")


def _wall_info(picM, d) -> dict:
    x = ambient_class(picM, d)
    return {"frame": _fr(picM.to_frame(d)), "square": x.square,
            "divisibility": x.divisibility, "type": wall_type(picM, d).name}


def _ray_name(ctx, ray) -> str:
    if ray.wall_class is not None:
        return f"({ctx.name_of(ray.wall_class)})^perp"
    return ctx.name_of(ray.direction)


def _cone_summary(ctx) -> dict:
    k = kahler_chamber(ctx)
    m = movable_chamber(ctx)
    r1, r2 = isotropic_boundary(ctx)
    walls = []
    for r in k.walls:
        walls.append({"class": ctx.name_of(r.wall_class), "square": r.square,
                      "divisibility": r.divisibility, "kind": r.kind})
    return {
        "gram": [list(r) for r in ctx.pic.gram],
        "boundary": sorted([ctx.name_of(r1.direction), ctx.name_of(r2.direction)]),
        "walls": walls,
        "kahler_bounds": [_ray_name(ctx, r) for r in k.selected_bounds()],
        "movable_bounds": [_ray_name(ctx, r) for r in m.selected_bounds()],
        "lagrangian_b": lagrangian_candidate(ctx, (0, 1)),
    }


def fig1() -> dict:
    ctx = ij_context()
    computed = _cone_summary(ctx)
    expected = {
        "gram": [[-2, 1], [1, 0]],
        "boundary": ["T+b", "b"],
        "walls": [
            {"class": "2T+b", "square": -4, "divisibility": 1, "kind": "WallRay"},
            {"class": "T", "square": -2, "divisibility": 1, "kind": "PexWall"},
            {"class": "T-b", "square": -4, "divisibility": 1, "kind": "WallRay"},
        ],
        "kahler_bounds": ["(T-b)^perp", "b"],
        "movable_bounds": ["(T)^perp", "b"],
        "lagrangian_b": True,
    }
    return _result("fig1", computed, expected)


def ij_twisted() -> dict:
    ctx = ij_twisted_context()
    computed = _cone_summary(ctx)
    expected = {
        "gram": [[-18, 3], [3, 0]],
        "boundary": ["T+3b", "b"],
        "walls": [
            {"class": "4T+11b", "square": -24, "divisibility": 3, "kind": "WallRay"},
            {"class": "T+2b", "square": -6, "divisibility": 3, "kind": "PexWall"},
            {"class": "T-b", "square": -24, "divisibility": 3, "kind": "WallRay"},
        ],
        "kahler_bounds": ["(T-b)^perp", "b"],
        "movable_bounds": ["(T+2b)^perp", "b"],
        "lagrangian_b": True,
    }
    return _result("ij-twisted", computed, expected)


def zero_section() -> dict:
    picM = moduli_picard(degree_two_k3(), MukaiVector(0, (2,), -4), [(-1, 1, 0), (0, 0, 1)])
    a, b, s = picM.frame_unit(0), picM.frame_unit(1), picM.sigma_frame
    r = curve_class(picM, [(a, -1), (b, 1), (s, 0)])
    d = dual_wall_divisor(picM, r)
    computed = {"gram_a_b_sigma": [list(x) for x in picM.frame_gram], "curve": _fr(r),
                "wall": _wall_info(picM, d)}
    expected = {"gram_a_b_sigma": [[2, 1, 0], [1, 0, 0], [0, 0, -6]], "curve": ["1", "-3", "0"],
                "wall": {"frame": ["1", "-3", "0"], "square": -4, "divisibility": 1,
                         "type": "NegFourDivOne"}}
    return _result("zero-section", computed, expected)


def p3_bundle() -> dict:
    picM = moduli_picard(degree_two_k3(), MukaiVector(0, (2,), 2), [(2, 1, 0), (0, 0, 1)])
    a, b, s = picM.frame_unit(0), picM.frame_unit(1), picM.sigma_frame
    x = picM.from_frame((F(-1, 2), F(-3, 2), F(-1, 2)))
    r = curve_class(picM, [(a, 2), (b, 1), (s, 1)])
    d = dual_wall_divisor(picM, r)
    computed = {"pair_a_b": picM.frame_gram[0][1], "x_square": x.square, "curve": _fr(r),
                "wall": _wall_info(picM, d), "wall_is_3x_plus_sigma": d == 3 * x + picM.sigma}
    expected = {"pair_a_b": -2, "x_square": -4, "curve": ["-1/2", "-3/2", "-1/6"],
                "wall": {"frame": ["-3/2", "-9/2", "-1/2"], "square": -24, "divisibility": 3,
                         "type": "NegTwentyFourDivThree"},
                "wall_is_3x_plus_sigma": True}
    return _result("p3-bundle", computed, expected)


def nonreduced() -> dict:
    picM = moduli_picard(degree_two_k3(), MukaiVector(0, (2,), -4), [(-1, 1, 0), (0, 0, 1)])
    a, b, s = picM.frame_unit(0), picM.frame_unit(1), picM.sigma_frame
    r = curve_class(picM, [(a, 1), (b, 0), (s, 4)])
    d = dual_wall_divisor(picM, r)
    computed = {"curve": _fr(r), "wall": _wall_info(picM, d)}
    expected = {"curve": ["0", "1", "-2/3"],
                "wall": {"frame": ["0", "3", "-2"], "square": -24, "divisibility": 3,
                         "type": "NegTwentyFourDivThree"}}
    return _result("nonreduced", computed, expected)


def mz_elliptic() -> dict:
    pic = make_lattice([[0, 1], [1, 0]], "<e,f>")
    v = MukaiVector(2, (0, 0), -2)
    verdict = mz_contraction_type(pic, v, (1, 2), 10)
    s = verdict.witness
    mukai_s = s.coords
    computed = {
        "kind": verdict.kind,
        "search_complete": verdict.search_complete,
        "witness_square": s.square(pic),
        "witness_pair_h0": pic.pair(s.c, (1, 2)),
        "witness_pair_v": s.pair(pic, v),
        "reference_witness_found": any(w == (1, 1, -2, -1) for w, _ in verdict.witnesses),
    }
    expected = {"kind": "SmallContraction", "search_complete": True, "witness_square": -2,
                "witness_pair_h0": 0, "witness_pair_v": 4, "reference_witness_found": True}
    out = _result("mz-elliptic", computed, expected)
    out["witness"] = list(mukai_s)
    return out


def pfaffian() -> dict:
    verdict = unique_compactification([[3, 4], [4, 10]])
    d = og10_vector(u=[(3, -6)], a2=(1, 2))
    computed = {"unique": verdict.unique, "perp_generator": list(verdict.perp_generator),
                "obstruction_square": verdict.obstruction_square,
                "obstruction_divisibility": verdict.obstruction_divisibility,
                "og10_example": {"square": d.square, "divisibility": d.divisibility,
                                 "type": wall_type(d.ambient, d).name}}
    expected = {"unique": True, "perp_generator": [-4, 3], "obstruction_square": -42,
                "obstruction_divisibility": 3,
                "og10_example": {"square": -42, "divisibility": 3, "type": "NotAWall"}}
    return _result("pfaffian", computed, expected)


def prop63_split() -> dict:
    picM = moduli_picard(degree_two_k3(), MukaiVector(2, (0,), -2))
    d = picM.from_mukai((3, 2, 3))
    sigma = picM.sigma
    e = half_integral_split(picM, d, sigma)
    w = 3 * e + sigma
    proj = sigma_projection_class(picM, w, sigma)
    computed = {"d_square": d.square, "e_square": e.square, "e_pair_sigma": e.pair(sigma),
                "e": _wall_info(picM, e), "3e_plus_sigma": _wall_info(picM, w),
                "projection": {"square": proj.square, "divisibility": proj.divisibility,
                               "admissible": proj.admissible,
                               "proportional_to_d": picM.to_frame(proj.primitive) == picM.to_frame(d)}}
    expected = {"d_square": -10, "e_square": -4, "e_pair_sigma": 3,
                "e": {"frame": computed["e"]["frame"], "square": -4, "divisibility": 1,
                      "type": "NegFourDivOne"},
                "3e_plus_sigma": {"frame": computed["3e_plus_sigma"]["frame"], "square": -24,
                                  "divisibility": 3, "type": "NegTwentyFourDivThree"},
                "projection": {"square": -10, "divisibility": 2, "admissible": True,
                               "proportional_to_d": True}}
    return _result("prop63-split", computed, expected)


def prop53_exclusion() -> dict:
    picM = moduli_picard(degree_two_k3(), MukaiVector(0, (2,), -2), [(-2, 1, 0), (-2, 1, -1)])
    d1, d2, s = picM.frame_unit(0), picM.frame_unit(1), picM.sigma_frame
    w = picM.from_frame(tuple(4 * x + 5 * y for x, y in zip(d1, d2)))
    sigma = picM.sigma
    half = picM.from_frame(tuple(F(x - y, 2) for x, y in zip(picM.to_frame(w), s)))
    wprime = 3 * half + sigma
    proj = sigma_projection_class(picM, wprime, sigma)
    x = ambient_class(picM, wprime)
    computed = {
        "D1_D2_gram": [[picM.frame_pair(d1, d1), picM.frame_pair(d1, d2)],
                       [picM.frame_pair(d2, d1), picM.frame_pair(d2, d2)]],
        "W_square": w.square,
        "W_prime": {"square": x.square, "divisibility": x.divisibility,
                    "type": wall_type(picM, wprime).name},
        "projection": {"square": proj.square, "divisibility": proj.divisibility,
                       "admissible": proj.admissible,
                       "proportional_to_W": picM.to_frame(proj.primitive) == picM.to_frame(w)},
    }
    expected = {
        "D1_D2_gram": [[2, 0], [0, -2]],
        "W_square": -18,
        "W_prime": {"square": -42, "divisibility": 3, "type": "NotAWall"},
        "projection": {"square": -18, "divisibility": 2, "admissible": False,
                       "proportional_to_W": True},
    }
    return _result("prop53-exclusion", computed, expected)


PRESETS: Dict[str, Callable[[], dict]] = {
    "fig1": fig1,
    "ij-twisted": ij_twisted,
    "zero-section": zero_section,
    "p3-bundle": p3_bundle,
    "nonreduced": nonreduced,
    "mz-elliptic": mz_elliptic,
    "pfaffian": pfaffian,
    "prop63-split": prop63_split,
    "prop53-exclusion": prop53_exclusion,
}


def run_preset(name: str) -> dict:
    try:
        fn = PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}",
                            available=sorted(PRESETS))
    return fn()


# structures drawn by ``preset ... --format svg|csv``
def preset_structure(name: str):
    if name == "fig1":
        return kahler_chamber(ij_context())
    if name == "ij-twisted":
        return kahler_chamber(ij_twisted_context())
    return None
