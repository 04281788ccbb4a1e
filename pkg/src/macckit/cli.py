"""Command-line front end: bound sweeps, dominance checks, scheme
verification, and entropy test batches.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
configuration error, 3 output could not be written.  Outputs are
deterministic: identical flags and seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, entropy, schemes, serialize
from .params import MaccParams

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

OUTPUT_DIR_ENV = "MACCKIT_OUT_DIR"

FAMILY_ALIASES = {
    "cutset": "cutset_thm1",
    "improved": "improved_thm2",
    "hkd": "hkd_lemma2",
    "hkd2": "hkd2_lemma3",
    "lemma2": "hkd_lemma2",
    "lemma3": "hkd2_lemma3",
    "best": "best",
}


class UsageError(ValueError):
    """Bad flag values or inadmissible configuration (exit 2)."""


def parse_grid(spec: str) -> list[Fraction]:
    """Parse "start:stop:count" with exact rational endpoints."""
    pieces = spec.split(":")
    if len(pieces) != 3:
        raise UsageError(f"grid must look like start:stop:count, got {spec!r}")
    try:
        start, stop = Fraction(pieces[0]), Fraction(pieces[1])
        count = int(pieces[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad grid {spec!r}: {exc}") from exc
    try:
        return bounds.uniform_grid(start, stop, count)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_families(spec: str) -> list[str]:
    families = []
    for name in spec.split(","):
        name = name.strip()
        family = FAMILY_ALIASES.get(name, name)
        if family not in bounds.FAMILY_IDS:
            raise UsageError(
                f"unknown bound family {name!r}; known: {', '.join(bounds.FAMILY_IDS)}"
            )
        if family not in families:
            families.append(family)
    if not families:
        raise UsageError("empty family list")
    return families


def _params_from(args: argparse.Namespace) -> MaccParams:
    try:
        return MaccParams(K=args.K, L=args.L, N=args.N)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _output_path(args: argparse.Namespace, default_name: str) -> Path:
    if args.out is not None:
        return Path(args.out)
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name


def _write_text(path: Path, write) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as stream:
            write(stream)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


class IOFailure(OSError):
    """Output file could not be written (exit 3)."""


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_bounds(args: argparse.Namespace) -> int:
    params = _params_from(args)
    families = parse_families(args.families)
    if args.grid is not None:
        grid = parse_grid(args.grid)
    else:
        grid = bounds.default_memory_grid(params)
    if grid[-1] > params.N:
        raise UsageError(f"grid exceeds N={params.N}")

    curves = [bounds.sweep_curve(params, family, grid) for family in families]
    for curve in curves:
        if curve.bound_id == "hkd_lemma2" and not curve.points:
            print(
                f"note: hkd_lemma2 is inapplicable for L={params.L} > floor(K/2)={params.K // 2}",
                file=sys.stderr,
            )

    path = _output_path(args, f"bounds_K{params.K}_L{params.L}_N{params.N}.{args.format}")
    if args.format == "csv":
        _write_text(path, lambda stream: serialize.write_curves_csv(stream, curves))
    else:
        _write_text(path, lambda stream: serialize.write_curves_json(stream, curves))
    print(f"wrote {sum(len(c.points) for c in curves)} points for "
          f"{len(curves)} families to {path}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    params = _params_from(args)
    if args.grid is not None:
        grid = parse_grid(args.grid)
    else:
        grid = bounds.default_memory_grid(params)
    if grid[-1] > params.N:
        raise UsageError(f"grid exceeds N={params.N}")

    report = bounds.verify_dominance(params, grid)
    path = _output_path(args, f"dominance_K{params.K}_L{params.L}_N{params.N}.json")
    _write_text(path, lambda stream: serialize.write_json_report(stream, report.to_dict()))
    if report.ok:
        print(f"dominance holds at all {len(report.entries)} grid points; report: {path}")
        return EXIT_OK
    print(f"{len(report.violations)} dominance violations; report: {path}", file=sys.stderr)
    return EXIT_CHECK_FAILED


_SCHEME_PARAMS_323 = MaccParams(K=3, L=2, N=3)


def _build_scheme(args: argparse.Namespace) -> tuple[schemes.Scheme, MaccParams]:
    if args.scheme == "zero-memory":
        params = _params_from(args)
        return schemes.scheme_zero_memory(params), params
    if _params_from(args) != _SCHEME_PARAMS_323:
        raise UsageError(f"scheme {args.scheme!r} is fixed to K=3, L=2, N=3")
    if args.scheme == "appendix-b":
        return schemes.scheme_appendix_b(), _SCHEME_PARAMS_323
    if args.scheme == "corner-323":
        return schemes.scheme_full_access_corner_323(), _SCHEME_PARAMS_323
    raise UsageError(f"unknown scheme {args.scheme!r}")


def cmd_simulate(args: argparse.Namespace) -> int:
    scheme, params = _build_scheme(args)
    library = schemes.FileLibrary.random(params, args.F, args.seed)
    try:
        scheme.check_library(library)
    except (schemes.SubpacketizationError, ValueError) as exc:
        raise UsageError(str(exc)) from exc

    report = schemes.verify_scheme(scheme, library)
    if args.out is not None:
        _write_text(
            Path(args.out),
            lambda stream: serialize.write_json_report(stream, report.to_dict()),
        )
    if args.points_out is not None:
        point = (scheme.memory, report.worst_case_rate, scheme.id)
        _write_text(
            Path(args.points_out),
            lambda stream: serialize.write_achievable_points_csv(stream, [point]),
        )
    print(f"scheme {scheme.id}: worst-case rate {serialize.fraction_str(report.worst_case_rate)} "
          f"over {len(report.per_demand)} demand vectors, seed {args.seed}")
    if report.passed:
        return EXIT_OK
    print(f"{len(report.failures)} (demand, user) decode failures", file=sys.stderr)
    return EXIT_CHECK_FAILED


def cmd_entropy_test(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise UsageError(f"trials must be >= 1, got {args.trials}")
    if args.K < 2:
        raise UsageError(f"K must be >= 2, got {args.K}")
    if args.alphabet < 2:
        raise UsageError(f"alphabet must be >= 2, got {args.alphabet}")

    sliding = entropy.run_sliding_window_batch(
        args.K, args.alphabet, args.trials, args.seed, tol=args.tol
    )
    conditional = entropy.run_conditional_window_batch(
        args.K, args.alphabet, args.trials, args.seed, tol=args.tol
    )
    if args.out is not None:
        payload = {"sliding": sliding.to_dict(), "conditional": conditional.to_dict()}
        _write_text(Path(args.out), lambda stream: serialize.write_json_report(stream, payload))
    total_failures = len(sliding.failures) + len(conditional.failures)
    print(
        f"entropy checks: {args.trials} trials, min margins "
        f"{sliding.min_margin:.3e} (sliding) / {conditional.min_margin:.3e} (conditional), "
        f"{total_failures} failures"
    )
    return EXIT_OK if total_failures == 0 else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_params(parser: argparse.ArgumentParser, default: tuple[int, int, int] | None) -> None:
    if default is None:
        parser.add_argument("--K", type=int, required=True, help="number of users and caches")
        parser.add_argument("--L", type=int, required=True, help="caches accessed per user")
        parser.add_argument("--N", type=int, required=True, help="number of files")
    else:
        parser.add_argument("--K", type=int, default=default[0])
        parser.add_argument("--L", type=int, default=default[1])
        parser.add_argument("--N", type=int, default=default[2])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macckit",
        description="Rate-memory lower bounds and scheme simulation for "
        "multi-access coded caching networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="sweep bound families over a memory grid")
    _add_params(p, None)
    p.add_argument(
        "--families",
        default="cutset,improved,hkd,hkd2,best",
        help="comma-separated families (aliases: cutset, improved, hkd, hkd2, best)",
    )
    p.add_argument("--grid", default=None, help="memory grid start:stop:count, e.g. 0:3/2:151")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help=f"output path (default under ${OUTPUT_DIR_ENV} or .)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compare", help="verify bound dominance relations on a grid")
    _add_params(p, None)
    p.add_argument("--grid", default=None, help="memory grid start:stop:count")
    p.add_argument("--out", default=None, help="report path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="exhaustively verify a scheme on a random library")
    p.add_argument(
        "--scheme",
        required=True,
        choices=("appendix-b", "corner-323", "zero-memory"),
    )
    p.add_argument("--F", type=int, default=12, help="bits per file")
    p.add_argument("--seed", type=int, default=0, help="library fill seed")
    _add_params(p, (3, 2, 3))
    p.add_argument("--out", default=None, help="verification report path (JSON)")
    p.add_argument("--points-out", default=None, help="achievable (M, R) CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("entropy-test", help="batch sliding-window entropy checks")
    p.add_argument("--K", type=int, default=3, help="number of window variables")
    p.add_argument("--alphabet", type=int, default=2, help="alphabet size per variable")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=entropy.DEFAULT_TOL)
    p.add_argument("--out", default=None, help="report path (JSON)")
    p.set_defaults(func=cmd_entropy_test)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
