"""``twoproj`` command-line tool.

Exit status: 0 when every check passes, 1 when a check fails or a
computation raises, 2 for usage errors and unreadable input.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

from . import __version__, report
from .checks import SUITES, resolve_suites
from .errors import GenerationFailure, ParseError
from .generate import MODES, GenSpec, corpus, generate_pair, spawn_seeds
from .matcore import Tolerance
from .pairfile import PairFile, load_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_PI_TERM = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/3`` or ``2pi/5``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_TERM.match(text)
    if not m:
        raise UsageError(f"cannot parse angle {text!r}")
    num = float(m.group(1)) if m.group(1) not in ("", "+", "-") else float(m.group(1) + "1")
    den = float(m.group(2)) if m.group(2) else 1.0
    return num * math.pi / den


def parse_angles(csv: str | None) -> tuple[float, ...]:
    if not csv:
        return ()
    return tuple(parse_angle(tok) for tok in csv.split(",") if tok.strip())


def tolerance_from(args) -> Tolerance:
    try:
        return Tolerance.from_env(args.tol)
    except ValueError as exc:
        raise UsageError(f"bad tolerance: {exc}") from exc


def gen_spec(args) -> GenSpec:
    if args.n is None:
        raise UsageError("--n is required")
    angles = parse_angles(args.angles)
    default_dim = len(angles) if args.mode == "block" else args.n // 2
    dim_p = args.dim_p if args.dim_p is not None else default_dim
    dim_q = args.dim_q if args.dim_q is not None else default_dim
    try:
        return GenSpec(args.n, dim_p, dim_q, args.mode, args.seed, angles)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def read_pair(args, tol: Tolerance):
    if not args.input:
        raise UsageError("--input is required")
    pf = PairFile.load(args.input) if args.input != "-" else PairFile.loads(sys.stdin.read())
    p, q = pf.decode(tol)
    return pf.name, p, q


def emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def status(doc: dict) -> int:
    return EXIT_OK if doc["passed"] else EXIT_FAIL


# --------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    spec = gen_spec(args)
    p, q = generate_pair(spec, tolerance_from(args))
    name = args.name or f"{spec.mode}-n{spec.n}-seed{spec.seed}"
    doc = PairFile.from_matrices(name, p, q).to_dict()
    doc["generator"] = {
        "n": spec.n,
        "dim_p": spec.dim_p,
        "dim_q": spec.dim_q,
        "mode": spec.mode,
        "seed": spec.seed,
        "angles": list(spec.angles),
    }
    emit(report.dumps(doc), args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    tol = tolerance_from(args)
    name, p, q = read_pair(args, tol)
    doc = report.decompose_report(name, p, q, args.side, tol)
    emit(report.dumps(doc), args.output)
    return status(doc)


def verify_instances(args, tol: Tolerance):
    """``(label, p, q, seed)`` for the pair file, a single spec or a batch."""
    if args.input:
        name, p, q = read_pair(args, tol)
        yield name, p, q, args.seed
        return
    if args.count is None:
        spec = gen_spec(args)
        p, q = generate_pair(spec, tol)
        yield f"{spec.mode}-n{spec.n}-seed{spec.seed}", p, q, spec.seed
        return
    if args.count < 1:
        raise UsageError("--count must be positive")
    modes = MODES if args.mode_given is None else (args.mode_given,)
    for i, (spec, p, q) in enumerate(corpus(args.count, args.seed, args.n_max, modes, args.n)):
        yield f"{i}:{spec.mode}-n{spec.n}", p, q, spec.seed


def cmd_verify(args) -> int:
    tol = tolerance_from(args)
    try:
        suites = resolve_suites(args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    # materialize first so parse and usage errors surface before any output
    instances = list(verify_instances(args, tol))
    doc = report.verify_report(instances, suites, tol)
    emit(report.dumps(doc), args.output)
    return status(doc)


def cmd_spectrum(args) -> int:
    tol = tolerance_from(args)
    name, p, q = read_pair(args, tol)
    doc = report.spectrum_report(name, p, q, args.compress, tol)
    emit(report.dumps(doc), args.output)
    return status(doc)


def cmd_commutant(args) -> int:
    tol = tolerance_from(args)
    given = [k for k in ("b", "a", "z") if getattr(args, k)]
    if len(given) != 1:
        raise UsageError("give exactly one of --b, --a, --z")
    name, p, q = read_pair(args, tol)
    mats = {k: load_matrix(getattr(args, k)) for k in given}
    doc = report.commutant_report(name, p, q, compress=args.compress, tol=tol, **mats)
    emit(report.dumps(doc), args.output)
    return status(doc)


# --------------------------------------------------------------------------
# argument parsing


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--output", "-o", help="write the document here instead of stdout")
    sp.add_argument("--tol", type=float, help="rank threshold eps_rank (overrides TWOPROJ_TOL)")


def _spec_flags(sp: argparse.ArgumentParser, mode_default: str | None = "random") -> None:
    sp.add_argument("--n", type=int, help="dimension")
    sp.add_argument("--dim-p", type=int, help="rank of p (default n/2, or the angle count)")
    sp.add_argument("--dim-q", type=int, help="rank of q (default n/2, or the angle count)")
    sp.add_argument("--mode", choices=MODES, default=mode_default)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--angles", help="comma-separated angles for block mode, e.g. pi/3,0.4")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twoproj",
        description="Decompositions of pairs of orthogonal projections.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("generate", help="write a seeded random pair file")
    _spec_flags(sp)
    sp.add_argument("--name", help="name stored in the pair file")
    _common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("decompose", help="run the decomposition pipeline on a pair")
    sp.add_argument("--input", "-i", help="pair file ('-' for stdin)")
    sp.add_argument("--side", choices=("p", "q"), default="p", help="sixfold completion")
    _common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--input", "-i", help="pair file; otherwise pairs are generated")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--count", type=int, help="verify a seeded batch of this many pairs")
    sp.add_argument("--n-max", type=int, default=12, help="largest n in a batch (default 12)")
    _spec_flags(sp, mode_default=None)
    _common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("spectrum", help="spectrum of p + q against 1 ± cosines")
    sp.add_argument("--input", "-i", help="pair file ('-' for stdin)")
    sp.add_argument("--compress", action="store_true", help="use the compression to ran [p, q]")
    _common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("commutant", help="embed or decompose joint commutant elements")
    sp.add_argument("--input", "-i", help="pair file ('-' for stdin)")
    sp.add_argument("--b", help="matrix file with a generator b = pbp commuting with c")
    sp.add_argument("--a", help="matrix file with an element commuting with p and q")
    sp.add_argument("--z", help="matrix file with a projection commuting with p and q")
    sp.add_argument("--compress", action="store_true", help="use the compression to ran [p, q]")
    _common(sp)
    sp.set_defaults(func=cmd_commutant)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        args.mode_given = args.mode
        if args.mode is None:
            args.mode = "random"
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"twoproj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"twoproj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationFailure as exc:
        print(f"twoproj: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
