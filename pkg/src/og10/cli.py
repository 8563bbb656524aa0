"""``og10`` command line interface.

Exit status: 0 on success, 2 for invalid input, 1 for errors raised by the
core computations.  Errors are written to stderr as JSON ``{error, detail}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import cones, discriminant, lattice, moduli, presets, walls
from .embedding import LatticeEmbedding
from .errors import OG10Error, ValidationError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# --- input parsing ---------------------------------------------------------------------

def parse_int_list(text: str) -> List[int]:
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
    else:
        data = [t for t in text.replace(" ", "").split(",") if t != ""]
    try:
        return [int(x) for x in data]
    except (TypeError, ValueError):
        raise ValidationError(f"expected a list of integers, got {text!r}")


def parse_matrix(text: str) -> List[List[int]]:
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        return [[int(x) for x in row] for row in data]
    return [parse_int_list(row) for row in text.split(";") if row.strip()]


def parse_fraction_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(t) for t in text.replace(" ", "").split(",") if t]
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"expected rationals, got {text!r}")


def load_lattice(source: str):
    """Named lattice, inline Gram "a,b;c,d", or JSON file.

    A JSON file may carry ``og10_images`` (one OG10 coordinate vector per
    basis element); the result is then an embedding certificate.
    """
    if source in lattice.NAMED_LATTICES:
        return lattice.NAMED_LATTICES[source]()
    path = Path(source)
    if source.endswith(".json") or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read lattice file {source}: {exc}")
        lat = lattice.Lattice.from_json(data)
        if "og10_images" in data:
            return LatticeEmbedding(lat, lattice.og10_lattice(),
                                    tuple(tuple(c) for c in data["og10_images"]))
        return lat
    try:
        return lattice.make_lattice(parse_matrix(source))
    except json.JSONDecodeError:
        raise ValidationError(f"unknown lattice {source!r}")


def _plain(lat) -> lattice.Lattice:
    return lat.source if isinstance(lat, LatticeEmbedding) else lat


def _need_class(args) -> List[int]:
    if not args.cls:
        raise ValidationError("--class is required")
    return parse_int_list(args.cls[0])


def _frac(x) -> str:
    return str(Fraction(x))


# --- commands --------------------------------------------------------------------------

def cmd_lattice_info(args):
    lat = _plain(load_lattice(args.lattice))
    g = discriminant.discriminant_group(lat)
    return {"label": lat.label, "rank": lat.rank, "gram": [list(r) for r in lat.gram],
            "signature": list(lattice.signature(lat)), "determinant": lat.determinant,
            "discriminant_group": g.to_json(),
            "hyperbolic_planes": [list(p) for p in lat.hyperbolic_planes]}


def cmd_div(args):
    lat = _plain(load_lattice(args.lattice))
    v = lat.element(_need_class(args))
    res = discriminant.residue(lat, v)
    return {"class": list(v.coords), "square": v.square, "divisibility": v.divisibility,
            "primitive": v.is_primitive, "residue": list(res.components),
            "residue_square": _frac(res.square)}


def cmd_orbit_equiv(args):
    lat = _plain(load_lattice(args.lattice))
    if not args.cls or len(args.cls) != 2:
        raise ValidationError("orbit-equiv needs --class twice")
    v, w = (lat.element(parse_int_list(c)) for c in args.cls)
    eq = discriminant.eichler_equivalent(lat, v, w)
    return {"classes": [list(v.coords), list(w.coords)], "equivalent": eq,
            "squares": [v.square, w.square],
            "residues": [list(discriminant.residue(lat, x).components) for x in (v, w)]}


def cmd_wall_check(args, pex=False):
    ctx = load_lattice(args.lattice)
    return walls.classify(ctx, _need_class(args), pex=pex).to_json()


def cmd_reflection(args):
    lat = _plain(load_lattice(args.lattice))
    m = walls.reflection(lat, _need_class(args))
    return {"class": _need_class(args), "matrix": [list(r) for r in m]}


def _moduli(args) -> moduli.ModuliPicard:
    pic = _plain(load_lattice(args.pic))
    v = moduli.MukaiVector.from_coords(parse_int_list(args.mukai))
    basis = parse_matrix(args.vperp) if args.vperp else None
    return moduli.moduli_picard(pic, v, basis)


def cmd_moduli_picard(args):
    return _moduli(args).to_json()


def cmd_curve_class(args):
    picM = _moduli(args)
    pairs = []
    for item in args.pairings.split(";"):
        if not item.strip():
            continue
        vec, _, val = item.partition(":")
        pairs.append((parse_fraction_list(vec), int(val)))
    r = moduli.curve_class(picM, pairs)
    d = moduli.dual_wall_divisor(picM, r)
    x = walls.ambient_class(picM, d)
    return {"curve": [_frac(t) for t in r],
            "wall": {"frame": [_frac(t) for t in picM.to_frame(d)], "lattice_coords": list(d.coords),
                     "square": x.square, "divisibility": x.divisibility,
                     "type": walls.wall_type(picM, d).name}}


def cmd_mz_classify(args):
    pic = _plain(load_lattice(args.pic))
    v = moduli.MukaiVector.from_coords(parse_int_list(args.mukai))
    return moduli.mz_contraction_type(pic, v, parse_int_list(args.h0), args.bound).to_json()


def _context(args) -> cones.ConeContext:
    if args.context:
        if args.context not in cones.NAMED_CONTEXTS:
            raise ValidationError(f"unknown context {args.context!r}; available: "
                                  f"{', '.join(sorted(cones.NAMED_CONTEXTS))}")
        return cones.NAMED_CONTEXTS[args.context]()
    if not args.lattice:
        raise ValidationError("cone needs --context or --lattice with og10_images")
    emb = load_lattice(args.lattice)
    if not isinstance(emb, LatticeEmbedding):
        raise ValidationError("cone lattice file must provide og10_images")
    if not args.hint:
        raise ValidationError("--hint is required with --lattice")
    return cones.ConeContext(emb.source, emb, tuple(parse_int_list(args.hint)),
                             emb.source.label or "custom")


def cmd_cone(args):
    ctx = _context(args)
    ample = tuple(parse_int_list(args.ample)) if args.ample else None
    if args.chamber == "movable":
        return cones.movable_chamber(ctx, ample, args.bound)
    if args.chamber == "kahler":
        return cones.kahler_chamber(ctx, ample, args.bound)
    rays = cones.wall_rays(ctx, cones.ALL_WALL_TYPES, args.bound)
    return cones.chambers(ctx, rays)


def cmd_unique(args):
    return cones.unique_compactification(parse_matrix(args.gram)).to_json()


def cmd_preset(args):
    result = presets.run_preset(args.name)
    if args.format != "json":
        st = presets.preset_structure(args.name)
        if st is None:
            raise ValidationError(f"preset {args.name} has no cone diagram")
        return st
    return result


# --- driver ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="og10", description="Lattice computations for OG10-type manifolds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, lattice_required=True):
        sp.add_argument("--lattice", required=lattice_required,
                        help="named lattice, inline Gram 'a,b;c,d' or JSON file")
        sp.add_argument("--class", dest="cls", action="append",
                        help="coordinates, comma separated")
        sp.add_argument("--format", choices=["json", "svg", "csv"], default="json")
        sp.add_argument("--out")
        return sp

    common(sub.add_parser("lattice-info"))
    common(sub.add_parser("div"))
    common(sub.add_parser("orbit-equiv"))
    common(sub.add_parser("wall-check"))
    common(sub.add_parser("pex-check"))
    common(sub.add_parser("reflection"))
    for name in ("moduli-picard", "curve-class", "mz-classify"):
        sp = common(sub.add_parser(name), lattice_required=False)
        sp.add_argument("--pic", required=True, help="Picard lattice of the K3 surface")
        sp.add_argument("--mukai", required=True, help="Mukai vector r,c_1,...,s")
        if name != "mz-classify":
            sp.add_argument("--vperp", help="basis of v-perp, rows separated by ';'")
        if name == "curve-class":
            sp.add_argument("--pairings", required=True,
                            help="frame vectors with values, e.g. '1,0,0:-1;0,1,0:1;0,0,1:0'")
        if name == "mz-classify":
            sp.add_argument("--h0", required=True)
            sp.add_argument("--bound", type=int, default=10)
    sp = common(sub.add_parser("cone"), lattice_required=False)
    sp.add_argument("--context", help="ij, ij-twisted or U")
    sp.add_argument("--hint", help="positive class selecting the cone component")
    sp.add_argument("--ample", help="class selecting the chamber")
    sp.add_argument("--chamber", choices=["kahler", "movable", "all"], default="kahler")
    sp.add_argument("--bound", type=int, default=50)
    sp = common(sub.add_parser("unique-compactification"), lattice_required=False)
    sp.add_argument("--gram", required=True, help="Gram of <h^2, K>, e.g. '3,4;4,10'")
    sp = common(sub.add_parser("preset"), lattice_required=False)
    sp.add_argument("name")
    return p


COMMANDS = {
    "lattice-info": cmd_lattice_info,
    "div": cmd_div,
    "orbit-equiv": cmd_orbit_equiv,
    "wall-check": cmd_wall_check,
    "pex-check": lambda a: cmd_wall_check(a, pex=True),
    "reflection": cmd_reflection,
    "moduli-picard": cmd_moduli_picard,
    "curve-class": cmd_curve_class,
    "mz-classify": cmd_mz_classify,
    "cone": cmd_cone,
    "unique-compactification": cmd_unique,
    "preset": cmd_preset,
}


def render(result, fmt: str) -> str:
    if isinstance(result, cones.ChamberStructure):
        if fmt == "svg":
            return cones.to_svg(result)
        if fmt == "csv":
            return cones.to_csv(result)
        result = result.to_json()
    elif fmt != "json":
        raise ValidationError(f"format {fmt} is only available for cone structures")
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def _fail(exc: OG10Error, stderr) -> int:
    stderr.write(json.dumps({"error": exc.code, "detail": exc.detail or str(exc)},
                            sort_keys=True) + "\n")
    return 2 if exc.validation else 1


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = render(COMMANDS[args.command](args), args.format)
    except OG10Error as exc:
        return _fail(exc, stderr)
    except (ValueError, json.JSONDecodeError) as exc:
        return _fail(ValidationError(str(exc)), stderr)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
