"""Worker-pool drivers: segmented scans, oracle sweeps and timing runs.

The lower modules are pure; this is the only place that owns processes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import multiprocessing
import time
from concurrent.futures import FIRST_COMPLETED, Executor, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .factors import factor_hint
from .oracle import trial_division_is_prime
from .scans import (
    Algorithm,
    Mode,
    ScanConfig,
    ScanOutcome,
    Verdict,
    order_key,
    outcome_from_segments,
    partition,
    row_count,
    run_scan,
    scan_bounds,
    scan_segment,
)
from .traces import witness_record

__all__ = [
    "ModulusCheck",
    "VerifySummary",
    "bench",
    "check_modulus",
    "parallel_scan",
    "segment_plan",
    "verify_range",
]


def segment_plan(m: int, algorithm: Algorithm, config: ScanConfig) -> list[tuple[int, int]]:
    lo, hi = scan_bounds(m, algorithm)
    if hi < lo:
        return []
    size = config.segment_size or max(1, math.ceil((hi - lo + 1) / (4 * config.workers)))
    return partition(lo, hi, size)


def _segment_min_key(m, algorithm, a, b, direction) -> int:
    # keys grow monotonically with the row, so the minimum sits at one end
    ends = {x for x in (a, a + 1, b - 1, b) if a <= x <= b}
    return min(order_key(m, algorithm, x, direction) for x in ends)


def _run_segment(args):
    m, algorithm, a, b, direction, cancel = args
    return scan_segment(m, algorithm, a, b, direction, cancel=cancel)


def parallel_scan(m: int, algorithm: Algorithm | str, config: ScanConfig,
                  executor: Executor | None = None) -> ScanOutcome:
    """Scan ``m`` split into segments run on a process pool.

    In canonical mode the result equals the sequential scan's, witness
    included.  In fast mode the first hit from any segment stops the rest;
    the verdict is the same but the witness may differ.
    """
    algorithm = Algorithm(algorithm)
    if config.workers == 1 and executor is None:
        return run_scan(m, algorithm, config)
    plan = segment_plan(m, algorithm, config)
    if not plan:
        return outcome_from_segments(m, algorithm, config.direction, [])
    own = executor is None
    if own:
        executor = ProcessPoolExecutor(config.workers)
    manager = multiprocessing.Manager() if config.mode is Mode.FAST else None
    cancel = manager.Event() if manager else None
    try:
        futures = {
            executor.submit(_run_segment, (m, algorithm, a, b, config.direction, cancel)):
                _segment_min_key(m, algorithm, a, b, config.direction)
            for a, b in plan
        }
        results = []
        pending = set(futures)
        best = None
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                if fut.cancelled():
                    continue
                res = fut.result()
                results.append(res)
                if res.witness is None:
                    continue
                if config.mode is Mode.FAST:
                    cancel.set()
                    for other in pending:
                        other.cancel()
                    # running segments notice the token within a few thousand steps
                    wait(pending)
                    return outcome_from_segments(m, algorithm, config.direction, [res])
                if best is None or res.key < best:
                    best = res.key
                    # segments that cannot hold an earlier hit are not needed
                    for other in list(pending):
                        if futures[other] > best and other.cancel():
                            pending.discard(other)
        return outcome_from_segments(m, algorithm, config.direction, results)
    finally:
        if own:
            executor.shutdown(cancel_futures=True)
        if manager is not None:
            manager.shutdown()


# -- oracle sweep ----------------------------------------------------------------


@dataclass
class ModulusCheck:
    m: int
    prime: bool
    verdicts: dict[str, str]
    witnesses: dict[str, dict | None]
    problems: list[str] = field(default_factory=list)


def check_modulus(m: int) -> ModulusCheck:
    """Run every scan on ``m`` and compare against trial division."""
    prime = trial_division_is_prime(m)
    check = ModulusCheck(m, prime, {}, {})
    for algorithm in Algorithm:
        out = run_scan(m, algorithm)
        name = algorithm.value
        check.verdicts[name] = out.verdict.value
        check.witnesses[name] = witness_record(out.witness)
        if (out.verdict is Verdict.PRIME) != prime:
            check.problems.append(f"{name}: verdict {out.verdict.value}, trial division says "
                                  f"{'prime' if prime else 'composite'}")
        if out.witness is None:
            continue
        if not out.witness.is_valid(m):
            check.problems.append(f"{name}: witness {out.witness} fails re-check")
            continue
        hint = factor_hint(out.witness, m)
        if not hint.factors or any(not (1 < f < m and m % f == 0) for f in hint.factors):
            check.problems.append(f"{name}: factor extraction gave {hint.factors}")
    return check


@dataclass
class VerifySummary:
    lo: int
    hi: int
    checks: list[ModulusCheck]

    @property
    def disagreements(self) -> list[ModulusCheck]:
        return [c for c in self.checks if c.problems]

    def digest(self) -> str:
        h = hashlib.sha256()
        for c in self.checks:
            h.update(repr((c.m, c.prime, sorted(c.verdicts.items()),
                           sorted((k, sorted(v.items()) if v else None)
                                  for k, v in c.witnesses.items()))).encode())
        return h.hexdigest()

    def render(self) -> str:
        n = len(self.checks)
        primes = sum(c.prime for c in self.checks)
        noun = "modulus" if n == 1 else "moduli"
        lines = [
            f"verify {self.lo}..{self.hi}: {n} {noun}, {len(self.disagreements)} disagreements",
            f"  primes={primes} composites={n - primes}",
        ]
        for algorithm in Algorithm:
            counts = {v.value: 0 for v in Verdict}
            for c in self.checks:
                counts[c.verdicts[algorithm.value]] += 1
            lines.append(f"  {algorithm.value}: " + " ".join(f"{k}={v}" for k, v in counts.items()))
        witnesses = sum(w is not None for c in self.checks for w in c.witnesses.values())
        lines.append(f"  witnesses re-checked={witnesses}")
        lines.append(f"  witness digest={self.digest()}")
        for c in self.disagreements[:20]:
            lines.extend(f"  DISAGREE m={c.m}: {p}" for p in c.problems)
        return "\n".join(lines) + "\n"


def odd_moduli(lo: int, hi: int) -> list[int]:
    return list(range(max(lo, 3) | 1, hi + 1, 2))


def verify_range(lo: int, hi: int, workers: int = 1) -> VerifySummary:
    ms = odd_moduli(lo, hi)
    if workers == 1:
        checks = [check_modulus(m) for m in ms]
    else:
        with ProcessPoolExecutor(workers) as pool:
            checks = list(pool.map(check_modulus, ms, chunksize=max(1, len(ms) // (8 * workers))))
    return VerifySummary(lo, hi, checks)


# -- timing ----------------------------------------------------------------------

BENCH_FIELDS = ("m", "bucket", "algorithm", "workers", "mode", "verdict", "iterations", "rows", "seconds")


def bench(lo: int, hi: int, config: ScanConfig) -> str:
    """Wall time of each scan on each odd modulus in ``[lo, hi]``, as CSV.

    ``bucket`` is the bit length of ``m``.
    """
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    executor = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        for m in odd_moduli(lo, hi):
            for algorithm in config.algorithms:
                start = time.perf_counter()
                out = parallel_scan(m, algorithm, config, executor)
                elapsed = time.perf_counter() - start
                writer.writerow({
                    "m": m, "bucket": m.bit_length(), "algorithm": algorithm.value,
                    "workers": config.workers, "mode": config.mode.value,
                    "verdict": out.verdict.value, "iterations": out.iterations,
                    "rows": row_count(m, algorithm), "seconds": f"{elapsed:.6f}",
                })
    finally:
        if executor is not None:
            executor.shutdown()
    return buf.getvalue()
