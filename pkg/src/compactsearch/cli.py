"""Command-line front end: ``enumerate | discover | bench | oracle``.

Exit status: 0 success, 1 semantic failure (oracle mismatch, unexpected
discoveries), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import bench, maxwell
from ._backend import BACKENDS, DEFAULT as DEFAULT_BACKEND
from .alphabet import (
    BUILTIN_ALPHABETS,
    AlphabetError,
    WeightedAlphabet,
    load_alphabet,
    render_theory,
)
from .enumerator import brute_force_oracle, first_discrepancy, march

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(Exception):
    pass


def _resolve_alphabet(spec: str) -> WeightedAlphabet:
    if spec in BUILTIN_ALPHABETS:
        return BUILTIN_ALPHABETS[spec]
    try:
        return load_alphabet(spec)
    except FileNotFoundError:
        raise ConfigError(f"alphabet file not found: {spec}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read alphabet {spec}: {exc}") from None
    except AlphabetError as exc:
        raise ConfigError(f"{spec}: {exc}") from None


def cmd_enumerate(args, out) -> int:
    alphabet = _resolve_alphabet(args.alphabet)
    start = time.perf_counter()
    result = march(alphabet, args.max_comp, workers=args.workers, backend=args.backend)
    elapsed = time.perf_counter() - start
    levels = result.levels
    print(f"alphabet={args.alphabet} symbols={len(alphabet)} max_q={levels.max_q}", file=out)
    for q, theories in levels:
        line = f"q={q} count={len(theories)}"
        if args.list:
            line += " [" + ", ".join(render_theory(t) for t in theories) + "]"
        print(line, file=out)
    print(f"total={levels.total} elapsed={elapsed:.6f}s", file=out)
    return EXIT_OK


def _tolerances(args) -> maxwell.Tolerances:
    base = maxwell.Tolerances.for_mode(args.mode)
    overrides = {
        k: getattr(args, k)
        for k in ("tol_rank", "tol_support", "tol_zero", "tol_coef")
        if getattr(args, k) is not None
    }
    return maxwell.Tolerances(**{**base.__dict__, **overrides})


def cmd_discover(args, out) -> int:
    config = maxwell.DiscoveryConfig(
        max_comp=args.max_comp,
        seed=args.seed,
        wave_count=args.waves,
        sample_count=args.samples,
        mode=args.mode,
        h=args.h,
        tolerances=_tolerances(args),
        prune=args.prune,
        monochromatic=args.monochromatic,
        workers=args.workers,
    )
    try:
        report = maxwell.discover(config)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(report.table(), file=out)
    print(file=out)
    for line in report.lines():
        print(line, file=out)
    print(f"enumerated={report.enumerated} discoveries={len(report.records)}", file=out)
    if args.expect_maxwell:
        problems = maxwell.check_maxwell(report)
        for p in problems:
            print(f"MISMATCH {p}", file=out)
        if problems:
            return EXIT_FAIL
        print("MAXWELL OK", file=out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    if args.compare_backends:
        print(f"{'alphabet':<10} {'backend':<8} {'seconds':>12} {'unions':>10}", file=out)
        for r in bench.compare_backends(args.max_comp, args.repetitions):
            print(
                f"{r['alphabet']:<10} {r['backend']:<8} {r['seconds']:>12.6f} {r['unions_attempted']:>10}",
                file=out,
            )
        return EXIT_OK
    rows = bench.run_bench(
        args.max_comp, args.repetitions, workers=args.workers, backend=args.backend
    )
    text = bench.emit_csv(rows)
    if not args.csv:
        out.write(text)
        return EXIT_OK
    with open(args.csv, "w", encoding="utf-8") as f:
        f.write(text)
    if args.plot:
        with open(args.plot, "w", encoding="utf-8") as f:
            f.write(bench.emit_plot_script(rows))
    totals: dict[str, int] = {}
    for r in rows:
        totals[r.alphabet_label] = totals.get(r.alphabet_label, 0) + r.unions_attempted
    print(f"wrote {len(rows)} rows to {args.csv}", file=out)
    print(" ".join(f"{k}_unions={v}" for k, v in sorted(totals.items())), file=out)
    return EXIT_OK


def random_alphabet(rng: random.Random, symbols: int, max_weight: int) -> WeightedAlphabet:
    return WeightedAlphabet(tuple((f"S{i}", rng.randint(1, max_weight)) for i in range(symbols)))


def cmd_oracle(args, out) -> int:
    cases = []
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            a = random_alphabet(rng, args.symbols, args.max_weight)
            max_comp = rng.randint(1, a.total_weight) if args.max_comp is None else args.max_comp
            cases.append((f"random[{i}] weights={list(a.weights)}", a, max_comp))
    else:
        a = _resolve_alphabet(args.alphabet)
        cases.append((args.alphabet, a, 14 if args.max_comp is None else args.max_comp))
    failed = False
    for label, alphabet, max_comp in cases:
        try:
            expected = brute_force_oracle(alphabet, max_comp)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        got = march(alphabet, max_comp, workers=args.workers, backend=args.backend).levels
        diff = first_discrepancy(got, expected)
        if diff is None:
            print(f"{label} max_comp={max_comp}: EQUIVALENT ({got.total} theories)", file=out)
        else:
            print(f"{label} max_comp={max_comp}: MISMATCH {diff}", file=out)
            failed = True
            break
    if failed:
        return EXIT_FAIL
    print("EQUIVALENT", file=out)
    return EXIT_OK


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compactsearch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--backend", choices=sorted(BACKENDS), default=DEFAULT_BACKEND)

    p = sub.add_parser("enumerate", parents=[common], help="list theories level by level")
    p.add_argument("--alphabet", default="paper", help=f"builtin {sorted(BUILTIN_ALPHABETS)} or a file path")
    p.add_argument("--max-comp", type=_positive, default=14)
    p.add_argument("--list", action="store_true", help="print every theory")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("discover", parents=[common], help="rediscover the vacuum Maxwell equations")
    p.add_argument("--max-comp", type=_positive, default=14)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["analytic", "fd"], default="analytic")
    p.add_argument("--h", type=float, default=1e-3, help="finite-difference step")
    p.add_argument("--waves", type=int, default=3)
    p.add_argument("--samples", type=_positive, default=64)
    p.add_argument("--tol-rank", type=float)
    p.add_argument("--tol-support", type=float)
    p.add_argument("--tol-zero", type=float)
    p.add_argument("--tol-coef", type=float)
    p.add_argument("--no-prune", dest="prune", action="store_false")
    p.add_argument("--monochromatic", action="store_true", help="single-frequency scene")
    p.add_argument("--expect-maxwell", action="store_true")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("bench", parents=[common], help="weighted vs uniform enumeration")
    p.add_argument("--max-comp", type=_positive, default=14)
    p.add_argument("--repetitions", type=_positive, default=3)
    p.add_argument("--csv", help="CSV output path (default stdout)")
    p.add_argument("--plot", help="write a matplotlib script here")
    p.add_argument("--compare-backends", action="store_true", help="time compiled vs pure-Python kernels")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", parents=[common], help="check enumeration against the powerset")
    p.add_argument("--alphabet", default="paper")
    p.add_argument("--max-comp", type=_positive)
    p.add_argument("--random", type=int, default=0, metavar="N", help="check N random alphabets instead")
    p.add_argument("--symbols", type=_positive, default=10)
    p.add_argument("--max-weight", type=_positive, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
