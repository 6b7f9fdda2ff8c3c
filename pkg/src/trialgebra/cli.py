"""Command line interface.

Exit codes: 0 success, 1 usage or input error, 2 a mathematical error
(not a composition algebra, no triality solution, ...), 3 an exhausted
search budget or an "unknown" search verdict.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path


from . import census as census_mod
from .compalg import (CompositionAlgebra, check_composition,
                      normalization_chain, para_hurwitz, symmetric_decomposition, unitalize)
from .errors import BudgetExhausted, MathematicalError, NotSquare
from .exactcore import parse_field
from .functor import (double_sign, double_sign_via_orders, functor_image, iso_check, iso_search)
from .session import Session, dumps, read_json, session_for
from .simgroup import Similarity, proj
from .triality import triality_components

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _params(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated parameters a,b,c")
    return parts


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands accept the flags too, without overwriting values given earlier
        flags = argparse.ArgumentParser(add_help=False)
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        flags.add_argument("--field", default=default(None), help="fp:<p> for an odd prime p, or q")
        flags.add_argument("--pfister", type=_params, default=default(None),
                           help="Pfister parameters a,b,c")
        flags.add_argument("--seed", type=int, default=default(0))
        flags.add_argument("--out", default=default(None), help="write JSON here instead of stdout")
        return flags

    common = global_flags(True)
    parser = _Parser(prog="trialgebra", parents=[global_flags(False)],
                     description="Exact computations with eight-dimensional composition algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("new", parents=[common], help="build an algebra")
    p.add_argument("kind", choices=["cayley-dickson", "zorn", "from-file"])
    p.add_argument("arg", nargs="?", help="a,b,c for cayley-dickson; a path for from-file")

    for name, helptext in [("check", "certify multiplicativity"),
                           ("unitalize", "unital isotope H with C = H_{f,g}"),
                           ("para", "para-Hurwitz algebra of a unital algebra"),
                           ("symmetric-decomp", "symmetric S with C = S_{f,g}"),
                           ("functor", "marked automorphisms (rho_1^C, rho_2^C)"),
                           ("double-sign", "double sign by both routes")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("algebra")

    p = sub.add_parser("triality", parents=[common], help="triality components of h")
    p.add_argument("algebra", nargs="?", help="defaults to the session Hurwitz algebra")
    p.add_argument("--h", required=True, dest="h_file")

    p = sub.add_parser("iso-check", parents=[common], help="is h: C -> D an isomorphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--h", required=True, dest="h_file")

    p = sub.add_parser("iso-search", parents=[common], help="search for an isomorphism C -> D")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--budget", type=int, default=2000)

    p = sub.add_parser("normalize", parents=[common], help="normalization chain for (F, G)")
    p.add_argument("algebra", nargs="?", help="unital algebra; defaults to the session one")
    p.add_argument("--F", required=True, dest="f_file")
    p.add_argument("--G", required=True, dest="g_file")

    p = sub.add_parser("census", parents=[common], help="double-sign census of random isotopes")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--iso-samples", type=int, default=10)
    p.add_argument("--iso-budget", type=int, default=500)
    p.add_argument("--csv", default=None, help="CSV path (default: next to --out)")

    sub.add_parser("selftest", parents=[common], help="run the built-in consistency checks")
    return parser


def _session(args, data: dict | None = None) -> Session:
    if data is not None:
        return session_for(data, args.field, args.pfister, args.seed)
    return Session(args.field or "fp:3", args.pfister or (1, 1, 1), args.seed)


def _load(args, path):
    data = read_json(path)
    session = _session(args, data)
    return session, session.load_algebra(data)


def _algebra_json(alg: CompositionAlgebra) -> dict:
    out = alg.to_json()
    if alg.unit is not None:
        out["unit"] = alg.field.serialize(alg.unit)
    return out


def _matrix(field, m) -> list:
    return field.serialize(m)


def cmd_new(args) -> tuple[dict, int]:
    if args.kind == "from-file":
        if not args.arg:
            raise UsageError("from-file needs a path")
        session, alg = _load(args, args.arg)
        return _algebra_json(alg), EXIT_OK
    if args.kind == "cayley-dickson":
        params = _params(args.arg) if args.arg else args.pfister
        session = Session(args.field or "fp:3", params or (1, 1, 1), args.seed)
        return _algebra_json(session.h0), EXIT_OK
    session = _session(args)
    return _algebra_json(session.zorn()), EXIT_OK


def cmd_check(args):
    session, alg = _load(args, args.algebra)
    fld = session.field
    return {"composition": True, "multiplier": fld.to_str(check_composition(alg)),
            "unit": None if alg.unit is None else fld.serialize(alg.unit)}, EXIT_OK


def cmd_unitalize(args):
    session, alg = _load(args, args.algebra)
    fld = session.field
    h, f, g, e = unitalize(alg)
    return {"hurwitz": _algebra_json(h), "f": _matrix(fld, f), "g": _matrix(fld, g),
            "unit": fld.serialize(e)}, EXIT_OK


def cmd_para(args):
    session, alg = _load(args, args.algebra)
    return _algebra_json(para_hurwitz(alg)), EXIT_OK


def cmd_symmetric_decomp(args):
    session, alg = _load(args, args.algebra)
    fld = session.field
    s, f, g = symmetric_decomposition(alg)
    return {"symmetric": _algebra_json(s), "f": _matrix(fld, f), "g": _matrix(fld, g)}, EXIT_OK


def cmd_triality(args):
    if args.algebra:
        session, alg = _load(args, args.algebra)
    else:
        session = _session(args)
        alg = session.h0
    fld, q = session.field, session.form
    h = Similarity.of(q, session.load_matrix(read_json(args.h_file)))
    pair = triality_components(alg, h)
    return {"h1": pair.h1.to_json(fld), "h2": pair.h2.to_json(fld),
            "classes": [proj(q, pair.h1).to_json(fld), proj(q, pair.h2).to_json(fld)]}, EXIT_OK


def cmd_functor(args):
    session, alg = _load(args, args.algebra)
    image = functor_image(session, alg)
    fld = session.field
    return {"rho1": image.a1.to_json(fld), "rho2": image.a2.to_json(fld),
            "labels": list(image.labels), "trialitarian": image.is_trialitarian}, EXIT_OK


def cmd_double_sign(args):
    session, alg = _load(args, args.algebra)
    direct = double_sign(alg).pair
    via_orders = double_sign_via_orders(session, alg).pair
    if direct != via_orders:
        raise AssertionError("double-sign routes disagree")
    return {"double_sign": list(direct), "via_orders": list(via_orders)}, EXIT_OK


def _load_pair(args):
    src_data, dst_data = read_json(args.source), read_json(args.target)
    session = _session(args, src_data)
    return session, session.load_algebra(src_data), session.load_algebra(dst_data)


def cmd_iso_check(args):
    session, c, d = _load_pair(args)
    h = session.load_matrix(read_json(args.h_file))
    return {"isomorphism": iso_check(session, c, d, h)}, EXIT_OK


def cmd_iso_search(args):
    session, c, d = _load_pair(args)
    verdict = iso_search(session, c, d, budget=args.budget, seed=args.seed)
    code = EXIT_BUDGET if verdict.status == "unknown" else EXIT_OK
    return verdict.to_json(session.field), code


def cmd_normalize(args):
    if args.algebra:
        session, alg = _load(args, args.algebra)
    else:
        session = _session(args)
        alg = session.h0
    fld = session.field
    big_f = session.load_matrix(read_json(args.f_file))
    big_g = session.load_matrix(read_json(args.g_file))
    try:
        res = normalization_chain(alg, big_f, big_g)
    except NotSquare as exc:
        part = exc.partial
        payload = {"error": "NotSquare", "message": str(exc),
                   "multiplier": fld.to_str(part.multiplier),
                   "unit_prime": fld.serialize(part.unit_prime)}
        return payload, EXIT_MATH
    return {"multiplier": fld.to_str(res.multiplier), "root": fld.to_str(res.root),
            "unit_prime": fld.serialize(res.unit_prime), "i_prime": _matrix(fld, res.i_prime),
            "T": _algebra_json(res.t), "f": _matrix(fld, res.f), "g": _matrix(fld, res.g)}, EXIT_OK


def cmd_census(args):
    session = _session(args)
    report = census_mod.run_census(session, args.samples, args.iso_samples, args.iso_budget)
    csv_path = args.csv or (str(Path(args.out).with_suffix(".csv")) if args.out else None)
    if csv_path:
        Path(csv_path).write_text(census_mod.to_csv(report))
    return report, EXIT_OK


def cmd_selftest(args):
    from .selftest import run_selftest
    report = run_selftest(args.seed)
    return report, EXIT_OK if report["passed"] else EXIT_MATH


COMMANDS = {
    "new": cmd_new, "check": cmd_check, "unitalize": cmd_unitalize, "para": cmd_para,
    "symmetric-decomp": cmd_symmetric_decomp, "triality": cmd_triality, "functor": cmd_functor,
    "double-sign": cmd_double_sign, "iso-check": cmd_iso_check, "iso-search": cmd_iso_search,
    "normalize": cmd_normalize, "census": cmd_census, "selftest": cmd_selftest,
}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.field is not None:
            parse_field(args.field)
        payload, code = COMMANDS[args.command](args)
    except (UsageError, argparse.ArgumentTypeError, ValueError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExhausted as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except MathematicalError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_MATH
    text = dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(run_command())


if __name__ == "__main__":
    main()
