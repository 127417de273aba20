"""Command line entry point.

Exit codes: 0 success, 1 mathematical failure, 2 I/O or schema error.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .exactla import NotInvertible

EXIT_OK, EXIT_MATH, EXIT_IO = 0, 1, 2
GENUS_RANGE = range(3, 7)


class InputError(Exception):
    pass


def _genus(text: str) -> int:
    g = int(text)
    if g not in GENUS_RANGE:
        raise argparse.ArgumentTypeError(f"genus must be between {GENUS_RANGE.start} and {GENUS_RANGE.stop - 1}")
    return g


def _load_rep(path):
    from .reps import InvalidRepresentation, Representation

    doc = io.read_json(path, "representation")
    if int(doc["genus"]) not in GENUS_RANGE:
        raise InputError(f"{path}: genus {doc['genus']} outside the supported range")
    try:
        return Representation.from_json(doc)
    except (InvalidRepresentation, NotInvertible, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_verify(args) -> int:
    from .presentation import relator_catalog, verify_representation

    rep = _load_rep(args.rep)
    report = verify_representation(rep, relator_catalog(rep.surface))
    io.write_json(args.out, report.to_json())
    return EXIT_OK if report.passed else EXIT_MATH


def cmd_classify(args) -> int:
    from .classify import NOT_VERIFIED, classify_representation

    rep = _load_rep(args.rep)
    report = classify_representation(rep)
    print(f"verdict: {report.verdict}")
    print(f"summary: {report.summary()}")
    for note in report.notes:
        print(f"note: {note}")
    if args.out:
        io.write_json(args.out, report.to_json())
    return EXIT_MATH if report.verdict == NOT_VERIFIED else EXIT_OK


def cmd_cohomology(args) -> int:
    from .cohomology import UnverifiedRepresentation, cocycle_space
    from .reps import dual_rep, symplectic_rep, trivial_rep
    from .surface import Surface

    if args.coeffs == "file":
        if not args.rep:
            raise InputError("--coeffs file requires --rep")
        rep = _load_rep(args.rep)
        label = str(args.rep)
    else:
        if args.genus is None:
            raise InputError("--genus is required")
        s = Surface(args.genus)
        rep = {"trivial": lambda: trivial_rep(s, 1), "H": lambda: symplectic_rep(s), "Hdual": lambda: dual_rep(symplectic_rep(s))}[
            args.coeffs
        ]()
        label = args.coeffs
    try:
        sp = cocycle_space(rep, chirality=args.chirality)
    except UnverifiedRepresentation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    doc = {"genus": rep.surface.genus, "coefficients": label, "chirality": args.chirality, **sp.to_json()}
    if args.out:
        io.write_json(args.out, doc)
    print(f"z1_dim = {doc['z1_dim']}")
    print(f"b1_dim = {doc['b1_dim']}")
    print(f"h1_dim = {doc['h1_dim']}")
    return EXIT_OK


def cmd_suspend(args) -> int:
    from .reps import InvalidRepresentation
    from .suspension import CoboundaryEquationViolated, CocycleInvalid, SuspensionSpec, double_suspension

    doc = io.read_json(args.spec, "suspension_spec")
    try:
        spec = SuspensionSpec.from_json(doc)
    except (InvalidRepresentation, NotInvertible, ValueError) as exc:
        raise InputError(f"{args.spec}: {exc}") from exc
    try:
        rep = double_suspension(spec)
    except CoboundaryEquationViolated as exc:
        print(f"error: {exc}; residual {exc.residual.to_json()}", file=sys.stderr)
        return EXIT_MATH
    except CocycleInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    io.write_json(args.out, rep.to_json())
    return EXIT_OK


def cmd_johnson_check(args) -> int:
    from .presentation import UnknownGenerator
    from .transvective import NotTransvective, separating_twist_check

    rep = _load_rep(args.rep)
    chain = args.chain or ["a1", "a2", "a3", "a4"]
    try:
        report = separating_twist_check(rep, chain)
    except NotTransvective as exc:
        print(f"error: not transvective: {exc}", file=sys.stderr)
        return EXIT_MATH
    except UnknownGenerator as exc:
        raise InputError(f"unknown generator {exc}") from exc
    io.write_json(args.out, report.to_json())
    return EXIT_OK if report.passed else EXIT_MATH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modrep", description="Representations of Mod(Σ_{g,1}) over Q.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every relator of the presentation")
    v.add_argument("rep")
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="classify a representation and emit a certificate")
    c.add_argument("rep")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    h = sub.add_parser("cohomology", help="dimensions of Z^1, B^1, H^1")
    h.add_argument("--genus", type=_genus)
    h.add_argument("--coeffs", choices=["trivial", "H", "Hdual", "file"], default="H")
    h.add_argument("--rep")
    h.add_argument("--chirality", choices=["left", "right"], default="left")
    h.add_argument("--out")
    h.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("suspend", help="build a double suspension from a spec")
    s.add_argument("spec")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_suspend)

    j = sub.add_parser("johnson-check", help="separating twists of genus one and two")
    j.add_argument("rep")
    j.add_argument("--chain", nargs="+")
    j.add_argument("--out", default="-")
    j.set_defaults(func=cmd_johnson_check)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (io.SchemaError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
