"""Command-line interface: one subcommand per pipeline, JSON output by default."""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Sequence

from . import alexinv, arrangements, fixtures, jumploci, resonance, tcone, toric
from .errors import DEFAULT_CAPS, CapExceeded, InputError
from .exactla import RationalSubspace
from .laurent import parse_laurent
from .presentations import GroupPresentation, check_epimorphism

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# input helpers


def _load_json(text: str) -> Any:
    """Inline JSON, or a path to a JSON file."""
    stripped = text.strip()
    if not stripped.startswith(("{", "[")):
        try:
            stripped = Path(text).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text!r}: {exc.strerror}") from exc
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.pos) from exc


def _presentation(args) -> GroupPresentation:
    given = [x for x in (args.pres, args.pres_file, args.fixture) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --pres, --pres-file, --fixture")
    if args.fixture is not None:
        return fixtures.named(args.fixture)
    if args.pres_file is not None:
        try:
            text = Path(args.pres_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.pres_file!r}: {exc.strerror}") from exc
        return GroupPresentation.parse(text)
    return GroupPresentation.parse(args.pres)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _values(text: str, pres: GroupPresentation) -> list[int]:
    """'x1=2,x2=3' or '2,3'."""
    items = [x.strip() for x in text.split(",") if x.strip()]
    if items and all("=" in x for x in items):
        named = {}
        for item in items:
            key, _, val = item.partition("=")
            key = key.strip()
            if key in named:
                raise InputError(f"generator {key} given twice")
            try:
                named[key] = int(val)
            except ValueError as exc:
                raise InputError(f"value for {key} is not an integer") from exc
        unknown = [k for k in named if k not in pres.generators]
        missing = [g for g in pres.generators if g not in named]
        if unknown or missing:
            raise InputError(f"values must name every generator (missing {missing}, unknown {unknown})")
        return [named[g] for g in pres.generators]
    vals = _int_list(text)
    if len(vals) != pres.ngens:
        raise InputError(f"expected {pres.ngens} values, got {len(vals)}")
    return vals


def _lattice(args) -> arrangements.IntersectionLattice:
    return arrangements.IntersectionLattice.from_json(_load_json(args.arr))


def _graph(args) -> toric.Graph:
    return toric.Graph.from_json(_load_json(args.graph))


@contextmanager
def _caps(overrides: Sequence[str]):
    saved = {}
    try:
        for item in overrides:
            name, _, value = item.partition("=")
            name = name.strip().lower()
            if name not in DEFAULT_CAPS or not value:
                raise InputError(f"--cap expects NAME=VALUE with NAME in {sorted(DEFAULT_CAPS)}")
            key = f"ALEXLOCI_CAP_{name.upper()}"
            saved.setdefault(key, os.environ.get(key))
            os.environ[key] = value
        yield
    finally:
        for key, old in saved.items():
            if old is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = old


# ---------------------------------------------------------------------------
# commands


def cmd_alex_poly(args):
    pres = _presentation(args)
    delta = alexinv.alexander_polynomial(pres)
    out = {"delta": str(delta), "b1": pres.b1}
    if args.newton:
        out["newton"] = alexinv.newton_segment_report(pres).to_json()
    return out


def cmd_depth(args):
    pres = _presentation(args)
    rho = jumploci.Character(args.prime, tuple(_values(args.values, pres)))
    d = jumploci.depth(pres, rho)
    return {"depth": d, "character": rho.to_json(pres)}


def cmd_codim1(args):
    return jumploci.codim1_stratum(_presentation(args)).to_json()


def cmd_cover_betti(args):
    pres = _presentation(args)
    res = check_epimorphism(pres, _values(args.values, pres), args.mod)
    if args.method == "depth":
        return jumploci.cover_betti_depth(pres, res, args.mod, args.prime).to_json()
    if args.method == "snf":
        h = jumploci.cover_h1_snf(pres, res, args.mod)
        return {"h1": h.to_json(), "b1_mod_p": h.betti_mod_p(args.prime)}
    comp = jumploci.cover_betti_both(pres, res, args.mod, args.prime)
    out = comp.to_json()
    out["b1"] = comp.by_depth.betti
    if not comp.agreement:
        raise _Disagreement(out)
    return out


def cmd_congruence_b1(args):
    pres = _presentation(args)
    return {"b1": jumploci.congruence_b1(pres, args.mod, args.prime, args.orders)}


def cmd_tau1(args):
    polys = [parse_laurent(p, args.nvars) for p in args.poly]
    nv = {f.nvars for f in polys}
    if len(nv) != 1:
        raise InputError("all polynomials must use the same number of variables (pass --nvars)")
    n = nv.pop()
    cone = tcone.tau1_of_polynomial(polys[0]) if len(polys) == 1 else tcone.tau1_of_system(polys, n)
    return {"nvars": n, "subspaces": cone.to_json()}


def cmd_bns_bound(args):
    pres = _presentation(args)
    cone = tcone.bns_upper_bound(pres)
    return {"nvars": cone.dim_ambient, "subspaces": cone.to_json()}


def cmd_dwyer_fried(args):
    pres = _presentation(args)
    nu = _int_list(args.cls)
    return {"class": nu, "finite_betti": tcone.dwyer_fried_rank1(pres, nu)}


def cmd_resonance(args):
    if args.action == "linearize":
        pres = _presentation(args)
        theta = resonance.linearized_alexander_matrix(pres)
        return {"rows": theta.rows, "cols": theta.cols, "matrix": theta.to_text()}
    if args.cup is not None:
        if any(x is not None for x in (args.pres, args.pres_file, args.fixture)):
            raise InputError("give either --cup or a presentation, not both")
        theta = resonance.CupStructure.from_json(_load_json(args.cup)).theta()
    else:
        theta = resonance.linearized_alexander_matrix(_presentation(args))
    if args.point is None:
        raise InputError("membership needs --point")
    point = _int_list(args.point)
    if len(point) != theta.nvars:
        raise InputError(f"point must have {theta.nvars} coordinates")
    return resonance.resonance_membership(theta, point, args.d, args.prime).to_json()


def _locus_json(locus):
    return [toric._sorted(w) for w in locus]


def cmd_toric(args):
    if args.action == "loci":
        if (args.complex is None) == (args.graph is None):
            raise InputError("loci needs exactly one of --complex or --graph")
        l = toric.SimplicialComplex.from_json(_load_json(args.complex)) if args.complex is not None \
            else _graph(args).flag_complex()
        locus = toric.toric_jump_loci(l, args.degree, args.d, args.prime)
        return {"degree": args.degree, "depth": args.d, "subsets": _locus_json(locus)}
    if args.graph is None:
        raise InputError(f"{args.action} needs --graph")
    g = _graph(args)
    if args.action == "classify":
        return toric.raag_classify(g).to_json()
    if args.action == "sigma":
        return toric.raag_sigma_complement(g, args.q).to_json()
    return toric.raag_delta_status(g).to_json()


def cmd_arr(args):
    if args.action == "milnor-b1":
        if args.arr is not None:
            if any(x is not None for x in (args.pres, args.pres_file, args.fixture)):
                raise InputError("give either --arr or a presentation, not both")
            pres = arrangements.arrangement_presentation(_lattice(args))
        else:
            pres = _presentation(args)
        res = arrangements.milnor_b1(
            pres,
            _int_list(args.mult) if args.mult else None,
            _int_list(args.degrees) if args.degrees else None,
            args.prime,
            append_relator=not args.no_append,
            with_snf=args.snf,
        )
        return res.to_json()
    if args.arr is None:
        raise InputError(f"arr {args.action} needs --arr")
    lat = _lattice(args)
    if args.action == "lattice":
        return lat.to_json()
    if args.action == "resonance":
        extra = []
        for normals in (_load_json(args.extra) if args.extra else []):
            extra.append(RationalSubspace.from_normals(normals, arrangements._affine(lat).n))
        comps = arrangements.resonance_components(lat, extra, seed=args.seed)
        out = {"components": [c.to_json() for c in comps]}
        if not all(c.verified for c in comps):
            raise _Disagreement(out, "a candidate component failed verification")
        return out
    if args.action == "classify":
        return arrangements.arr_classify(lat).to_json()
    if args.action == "alex":
        return arrangements.arr_alex_poly(lat).to_json()
    return arrangements.boundary_invariants(lat).to_json()


class _Disagreement(Exception):
    def __init__(self, report, message="the two methods disagree"):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# parser


def _add_pres(p):
    p.add_argument("--pres", help='presentation, e.g. "<x1,x2 | [x1,x2]>"')
    p.add_argument("--pres-file", help="file containing a presentation")
    p.add_argument("--fixture", help="built-in presentation, e.g. pencil:3 or heisenberg")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cap", action="append", default=[], metavar="NAME=VALUE",
                        help=f"override an enumeration cap ({', '.join(sorted(DEFAULT_CAPS))})")

    parser = _Parser(prog="alexloci", description="Alexander invariants, jump loci and arrangements.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("alex-poly", parents=[common], help="Alexander polynomial")
    _add_pres(p)
    p.add_argument("--newton", action="store_true", help="add the Newton polytope segment report")
    p.set_defaults(func=cmd_alex_poly)

    p = sub.add_parser("depth", parents=[common], help="depth of a rank-one character")
    _add_pres(p)
    p.add_argument("--values", required=True, help="x1=2,x2=3 or 2,3")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("codim1", parents=[common], help="codimension-one part of V_1")
    _add_pres(p)
    p.set_defaults(func=cmd_codim1)

    p = sub.add_parser("cover-betti", parents=[common], help="first Betti number of a cyclic cover")
    _add_pres(p)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--values", required=True, help="residues of the generators mod n")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--method", choices=["depth", "snf", "both"], default="depth")
    p.set_defaults(func=cmd_cover_betti)

    p = sub.add_parser("congruence-b1", parents=[common], help="Betti number of the mod-n congruence cover")
    _add_pres(p)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--orders", choices=["dividing", "exact"], default="dividing")
    p.set_defaults(func=cmd_congruence_b1)

    p = sub.add_parser("tau1", parents=[common], help="exponential tangent cone of V(f) or of a system")
    p.add_argument("--poly", action="append", required=True, help="Laurent polynomial; repeat for a system")
    p.add_argument("--nvars", type=int)
    p.set_defaults(func=cmd_tau1)

    p = sub.add_parser("bns-bound", parents=[common], help="tangent cone bound on the BNS complement")
    _add_pres(p)
    p.set_defaults(func=cmd_bns_bound)

    p = sub.add_parser("dwyer-fried", parents=[common], help="finiteness of b1 of a Z-cover")
    _add_pres(p)
    p.add_argument("--class", dest="cls", required=True, help="primitive class, e.g. 1,0")
    p.set_defaults(func=cmd_dwyer_fried)

    p = sub.add_parser("resonance", parents=[common], help="resonance membership or linearization")
    p.add_argument("action", choices=["membership", "linearize"])
    _add_pres(p)
    p.add_argument("--cup", help="cup-product JSON {b1, b2, mu: [[i,j,k,v], ...]}")
    p.add_argument("--point", help="integer point, e.g. 0,0,1,0")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("toric", parents=[common], help="toric complexes and right-angled Artin groups")
    p.add_argument("action", choices=["loci", "classify", "sigma", "delta-status"])
    p.add_argument("--complex", help="simplicial complex JSON {vertices, facets}")
    p.add_argument("--graph", help="graph JSON {vertices, edges}")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("arr", parents=[common], help="line arrangements")
    p.add_argument("action", choices=["lattice", "resonance", "classify", "alex", "milnor-b1", "boundary"])
    p.add_argument("--arr", help='arrangement JSON {"lines": ...} or {"combinatorics": ...}')
    _add_pres(p)
    p.add_argument("--extra", help="JSON list of extra subspaces, each a list of normal vectors")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mult", help="multiplicities a_i")
    p.add_argument("--degrees", help="degrees n_i")
    p.add_argument("--prime", type=int)
    p.add_argument("--snf", action="store_true", help="also compute H1 of the fiber by Smith normal form")
    p.add_argument("--no-append", action="store_true",
                   help="the presentation already presents the projectivised complement")
    p.set_defaults(func=cmd_arr)
    return parser


# ---------------------------------------------------------------------------
# output


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [pad + _scalar(value)]


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x))
                                       for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def _emit(obj, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(obj, sort_keys=False) + "\n")
    else:
        stream.write("\n".join(_text(obj)) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--format=text" in argv or any(a == "--format" and b == "text" for a, b in zip(argv, argv[1:])) \
        else "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        with _caps(args.cap):
            result = args.func(args)
    except _Disagreement as exc:
        _emit({"error": {"type": "disagreement", "message": str(exc)}, "report": exc.report}, fmt, sys.stdout)
        return EXIT_FAIL
    except InputError as exc:
        _emit({"error": {"type": "input_error", "message": str(exc)}}, fmt, sys.stdout)
        return EXIT_INPUT
    except CapExceeded as exc:
        _emit({"error": {"type": "cap_exceeded", "message": str(exc)}}, fmt, sys.stdout)
        return EXIT_CAP
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    _emit(result, fmt, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
