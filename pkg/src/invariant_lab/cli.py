"""``invariant-lab`` command line.

Exit codes: 0 prime / success, 1 composite found (``test``) or disagreement
found (``verify``), 2 usage or range error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import traces
from .arith import MAX_MODULUS, Modulus
from .factors import factor_hint, paper_cd_method
from .oracle import COUNT_REPORT_LIMIT, count_report
from .parallel import bench, parallel_scan, verify_range
from .remainder import (
    enumerate_invariant_tuples,
    enumerate_nontrivial_quadratic,
    enumerate_nontrivial_triangular,
    enumerate_triangular_zero_tuples,
)
from .scans import InvariantHit, ScanConfig, Verdict, row_count, run_scan

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2
DEFAULT_TRACE_CAP = 10**7


class UsageError(Exception):
    pass


def _modulus_arg(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return m


def _range_arg(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        bounds = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if not sep or bounds[0] > bounds[1] or bounds[0] < 1:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}")
    return bounds


def _config(args, default_alg: str = "invariant") -> ScanConfig:
    return ScanConfig(
        algorithm=args.alg or default_alg,
        direction=args.direction,
        trace=getattr(args, "command", None) == "trace",
        mode=args.mode,
        workers=args.workers,
        segment_size=args.segment_size,
    )


def _odd_modulus(m: int) -> Modulus:
    if m > MAX_MODULUS:
        raise UsageError(f"m={m} exceeds 2**62")
    try:
        return Modulus(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands --------------------------------------------------------------------


def cmd_test(args, out) -> int:
    m = args.m
    if m < 2:
        raise UsageError(f"m must be >= 2, got {m}")
    if m > MAX_MODULUS:
        raise UsageError(f"m={m} exceeds 2**62")
    if m == 2 or m % 2 == 0:
        verdict = "prime" if m == 2 else "composite"
        if args.format == "json-lines":
            rec = {"m": m, "algorithm": "parity", "verdict": verdict,
                   "factors": [] if m == 2 else [2]}
            out.write(json.dumps(rec) + "\n")
        else:
            out.write(f"m={m}\n  parity: {verdict}" + ("" if m == 2 else "\n  factors: 2") + "\n")
        return EXIT_OK if m == 2 else EXIT_FOUND

    m = _odd_modulus(m)
    config = _config(args)
    composite = False
    if args.format != "json-lines":
        out.write(f"m={m}\n")
    for algorithm in config.algorithms:
        outcome = parallel_scan(m, algorithm, config)
        composite |= outcome.verdict is not Verdict.PRIME
        hint = factor_hint(outcome.witness, m) if outcome.witness else None
        paper = None
        if args.paper_cd_method and isinstance(outcome.witness, InvariantHit):
            paper = paper_cd_method(outcome.witness, m)
        if args.format == "json-lines":
            rec = traces.outcome_record(outcome)
            rec["factors"] = sorted(hint.factors) if hint else []
            if paper is not None:
                rec["paper_cd_factors"] = paper.factors
            out.write(json.dumps(rec) + "\n")
            continue
        line = f"  {algorithm.value}: {outcome.verdict.value}, {outcome.iterations} iterations"
        if outcome.witness is not None:
            line += f", hit at iteration {outcome.hit_iteration}"
        out.write(line + "\n")
        if outcome.witness is not None:
            out.write(f"    witness: {outcome.witness}\n")
            out.write(f"    factors: {' '.join(map(str, sorted(hint.factors)))}\n")
        if paper is not None:
            out.write(f"    c*d/m recipe: {' '.join(map(str, paper.factors)) or '-'}"
                      f" ({paper.remark})\n")
    return EXIT_FOUND if composite else EXIT_OK


def cmd_trace(args, out) -> int:
    m = _odd_modulus(args.m)
    config = _config(args)
    for algorithm in config.algorithms:
        rows = row_count(m, algorithm)
        if rows > args.cap:
            raise UsageError(f"{algorithm.value} trace for m={m} has up to {rows} rows, "
                             f"above the cap of {args.cap} (see --cap)")
    for algorithm in config.algorithms:
        outcome = run_scan(m, algorithm, config)
        out.write(traces.render(outcome, args.format))
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    m = _odd_modulus(args.m)
    if m > args.cap:
        raise UsageError(f"m={m} is above the enumeration cap of {args.cap}")
    if args.kind == "quadratic":
        out.write(" ".join(map(str, enumerate_nontrivial_quadratic(m))) + "\n")
    elif args.kind == "triangular":
        out.write(" ".join(map(str, enumerate_nontrivial_triangular(m))) + "\n")
    elif args.kind == "invariants":
        out.write(" ".join(str(t.d) for t in sorted(enumerate_invariant_tuples(m),
                                                     key=lambda t: t.d)) + "\n")
    else:
        out.write("# anti-invariant/invariant tuples (c, c+1), c*(c+1) == 0 mod m\n")
        for t in enumerate_invariant_tuples(m):
            out.write(f"{t.c} {t.d} {'trivial' if t.trivial else 'non-trivial'}\n")
        out.write("# triangular zero tuples (c, c+1), T(c) == 0 mod m\n")
        for t in enumerate_triangular_zero_tuples(m):
            out.write(f"{t.c} {t.d} {'trivial' if t.trivial else 'non-trivial'}\n")
    return EXIT_OK


def cmd_counts(args, out) -> int:
    m = _odd_modulus(args.m)
    if m > min(args.cap, COUNT_REPORT_LIMIT):
        raise UsageError(f"m={m} is above the count cap of {min(args.cap, COUNT_REPORT_LIMIT)}")
    r = count_report(m)
    flags = r.discrepancy_flags

    def mark(key):
        return "ok" if flags[key] else "MISMATCH"

    out.write(f"m={r.m} beta={r.beta} epsilon={r.epsilon} gamma={r.gamma} gamma_alt={r.gamma_alt}\n")
    out.write(f"predicted_invariants={r.predicted_invariants} actual={r.actual_invariants} "
              f"{mark('invariants')}\n")
    out.write(f"predicted_quadratic={r.predicted_quadratic} actual={r.actual_quadratic} "
              f"{mark('quadratic')} (coprime roots only: {r.actual_quadratic_coprime})\n")
    out.write(f"predicted_triangular={r.predicted_triangular} actual={r.actual_triangular} "
              f"{mark('triangular')}\n")
    out.write(f"predicted_triangular_alt={r.predicted_triangular_alt} actual={r.actual_triangular} "
              f"{mark('triangular_alt')} (coprime roots only: {r.actual_triangular_coprime})\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    lo, hi = args.range
    summary = verify_range(lo, hi, args.workers)
    out.write(summary.render())
    return EXIT_FOUND if summary.disagreements else EXIT_OK


def cmd_bench(args, out) -> int:
    lo, hi = args.range
    if hi > MAX_MODULUS:
        raise UsageError("range exceeds 2**62")
    config = _config(args, default_alg="all")
    report = bench(lo, hi, config)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(report)
    else:
        out.write(report)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alg", choices=["invariant", "quadratic", "triangular", "all"])
    common.add_argument("--format", choices=list(traces.RENDERERS), default="table")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--segment-size", type=int, default=None)
    common.add_argument("--mode", choices=["fast", "canonical"], default="canonical")
    common.add_argument("--direction", choices=["paper", "reversed"], default="paper")
    common.add_argument("--paper-cd-method", action="store_true",
                        help="also print the c*d/m recipe for invariant witnesses")

    parser = argparse.ArgumentParser(prog="invariant-lab",
                                     description="Invariant-based primality scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", parents=[common], help="primality verdict with witness and factors")
    p.add_argument("m", type=_modulus_arg)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("trace", parents=[common], help="iteration-by-iteration scan trace")
    p.add_argument("m", type=_modulus_arg)
    p.add_argument("--cap", type=int, default=DEFAULT_TRACE_CAP)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("enumerate", parents=[common], help="list non-trivial residues or tuples")
    p.add_argument("m", type=_modulus_arg)
    p.add_argument("--kind", choices=["invariants", "quadratic", "triangular", "tuples"],
                   default="quadratic")
    p.add_argument("--cap", type=int, default=COUNT_REPORT_LIMIT)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("counts", parents=[common], help="predicted vs exhaustive solution counts")
    p.add_argument("m", type=_modulus_arg)
    p.add_argument("--cap", type=int, default=COUNT_REPORT_LIMIT)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("verify", parents=[common], help="scans vs trial division over a range")
    p.add_argument("range", type=_range_arg)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="wall time per scan and modulus, CSV")
    p.add_argument("range", type=_range_arg)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if args.workers < 1:
        print("invariant-lab: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"invariant-lab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
