"""Command-line entry point (``gerst``).

Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage error,
unknown algebra or resource limit, 3 malformed or invalid HopfFile, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import UnknownAlgebraError, builtin, describe, parse_field
from .checks import (
    INJECT_TARGETS, check_bracket_structure, check_commutativity, check_thm2, check_thm3,
)
from .cochains import cohomology
from .config import ResourceLimitError
from .doubles import drinfeld_double
from .field import FieldError
from .hopf import HopfAxiomError, check_hopf_axioms
from .io import HopfFileError, parse_hopf, write_hopf

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BAD_FILE, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", help="base field for built-ins: a prime p or Q")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--skip-validation", action="store_true",
                   help="import HopfFiles without running the axiom check")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gerst", description="Exact Hopf cohomology and Gerstenhaber checks")
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebras", parents=[common], help="list built-in algebras")
    alg.add_argument("action", choices=("list",))

    v = sub.add_parser("verify", parents=[common], help="check the Hopf axioms")
    v.add_argument("algebra", help="built-in name or HopfFile path")

    c = sub.add_parser("cohomology", parents=[common], help="Hochschild cohomology dimensions")
    c.add_argument("algebra")
    c.add_argument("--coefficients", choices=("trivial", "adjoint"), default="trivial")
    c.add_argument("--max-degree", type=int, default=2)
    c.add_argument("--allow-large", action="store_true", help="ignore the default degree cap")
    c.add_argument("--bases", action="store_true", help="include cocycle bases in json output")

    d = sub.add_parser("double", parents=[common], help="write the Drinfeld double as a HopfFile")
    d.add_argument("algebra")
    d.add_argument("--out", required=True)

    k = sub.add_parser("check", parents=[common], help="run a theorem check")
    k.add_argument("which", choices=("thm2", "thm3", "comm", "bracket"))
    k.add_argument("algebra")
    k.add_argument("--p", type=int, default=1)
    k.add_argument("--q", type=int, default=1)
    k.add_argument("--trials", type=int, default=20)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--max-degree", type=int, default=None,
                   help="thm2: top degree (default 2); bracket: top p+q (default 3)")
    k.add_argument("--allow-large", action="store_true")
    k.add_argument("--inject", choices=INJECT_TARGETS, help=argparse.SUPPRESS)

    e = sub.add_parser("export", parents=[common], help="write a built-in as a HopfFile")
    e.add_argument("algebra")
    e.add_argument("--out", required=True)
    return parser


def _load(spec: str, args):
    if os.path.isfile(spec):
        if args.field:
            raise UsageError("--field applies to built-ins only")
        return parse_hopf(spec, validate=not args.skip_validation)
    return builtin(spec, parse_field(args.field))


def _emit(obj, args, out) -> None:
    if args.format == "json":
        out.write(obj.to_json() if hasattr(obj, "to_json") else json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        out.write(obj.to_text())


def _run(args, out) -> int:
    if args.command == "algebras":
        if args.format == "json":
            out.write(json.dumps({"algebras": describe()}, indent=2) + "\n")
        else:
            out.write("\n".join(describe()) + "\n")
        return EXIT_OK

    if args.command == "verify":
        if os.path.isfile(args.algebra):
            H = parse_hopf(args.algebra, validate=False)
        else:
            H = builtin(args.algebra, parse_field(args.field))
        rep = check_hopf_axioms(H)
        _emit(rep, args, out)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.command == "cohomology":
        H = _load(args.algebra, args)
        rep = cohomology(H, args.coefficients, args.max_degree, override=args.allow_large)
        if args.format == "json":
            doc = rep.to_dict(H.field, include_bases=args.bases)
            out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            out.write(rep.to_text())
        return EXIT_OK

    if args.command in ("double", "export"):
        H = _load(args.algebra, args)
        if args.command == "double":
            H = drinfeld_double(H).underlying.renamed(f"double:{H.name}", provenance=H.name)
        write_hopf(H, args.out)
        out.write(f"wrote {H.name} (dim {H.dim}, {H.field}) to {args.out}\n")
        return EXIT_OK

    H = _load(args.algebra, args)
    kw = {"trials": args.trials, "seed": args.seed, "inject": args.inject, "override": args.allow_large}
    if args.which == "thm2":
        rep = check_thm2(H, 2 if args.max_degree is None else args.max_degree, **kw)
    elif args.which == "thm3":
        rep = check_thm3(H, args.p, args.q, **kw)
    elif args.which == "comm":
        rep = check_commutativity(H, args.p, args.q, **kw)
    else:
        rep = check_bracket_structure(H, 3 if args.max_degree is None else args.max_degree, **kw)
    _emit(rep, args, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (UsageError, UnknownAlgebraError, FieldError, ValueError) as exc:
        if isinstance(exc, (HopfFileError, HopfAxiomError)):
            err.write(f"error: {exc}\n")
            return EXIT_BAD_FILE
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
