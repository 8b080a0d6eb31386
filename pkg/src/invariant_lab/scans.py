"""The three residue scans: invariant, quadratic and triangular.

Each scan walks a range of indices ``x`` keeping ``x*x % m`` or ``T(x) % m`` in
a chain and stops at the first residue that proves ``m`` composite.

==========  ===========================  ==================  ================
scan        index range                  default order       witness
==========  ===========================  ==================  ================
invariant   2 .. (m-1)/2                 ascending           InvariantHit,
                                                             ZeroSquare
quadratic   isqrt(m-1)+1 .. (m-1)/2      descending          QuadraticHit,
                                                             ZeroSquare
triangular  s+1 .. (m-1)/2, T(s) < m     descending, 2 per   TriangularHit,
                                         row (x-1 then x)    ZeroTriangular
==========  ===========================  ==================  ================

Any sub-interval of the index range can be scanned on its own with
:func:`scan_segment`; every hit carries an order key so that the earliest hit
over all segments is the one a sequential scan would have reported.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import ClassVar, Protocol

from .arith import (
    Modulus,
    nearest_square_at_least,
    nearest_triangular_at_least,
    seed_square_chain,
    seed_triangular_chain,
    tri_root,
    triangular,
)

__all__ = [
    "Algorithm",
    "Direction",
    "InvariantHit",
    "Mode",
    "QuadraticHit",
    "ScanConfig",
    "ScanOutcome",
    "SegmentResult",
    "TraceRow",
    "TriangularHit",
    "Verdict",
    "Witness",
    "ZeroSquare",
    "ZeroTriangular",
    "invariant_scan",
    "order_key",
    "outcome_from_segments",
    "partition",
    "quadratic_scan",
    "row_count",
    "run_scan",
    "scan_bounds",
    "scan_segment",
    "triangular_scan",
]

CANCEL_CHECK_EVERY = 4096


class Algorithm(str, enum.Enum):
    INVARIANT = "invariant"
    QUADRATIC = "quadratic"
    TRIANGULAR = "triangular"


class Direction(str, enum.Enum):
    PAPER = "paper"
    REVERSED = "reversed"


class Mode(str, enum.Enum):
    FAST = "fast"
    CANONICAL = "canonical"


class Verdict(str, enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    NOT_SQUAREFREE = "not-squarefree"


# -- witnesses -----------------------------------------------------------------


@dataclass(frozen=True)
class InvariantHit:
    """``d*d == d`` with ``d`` not 0 or 1; ``c = d - 1``."""

    c: int
    d: int
    verdict: ClassVar[Verdict] = Verdict.COMPOSITE

    @property
    def index(self) -> int:
        return self.d

    def is_valid(self, m: int) -> bool:
        return (
            0 < self.c < m - 1
            and self.d == self.c + 1
            and self.c * self.d % m == 0
        )


@dataclass(frozen=True)
class QuadraticHit:
    """``x*x == t*t (mod m)`` with ``t*t < m`` and ``x`` not ``t`` or ``m - t``."""

    x: int
    t: int
    verdict: ClassVar[Verdict] = Verdict.COMPOSITE

    @property
    def index(self) -> int:
        return self.x

    def is_valid(self, m: int) -> bool:
        return (
            0 <= self.t
            and self.t * self.t < m
            and 0 <= self.x < m
            and (self.x * self.x - self.t * self.t) % m == 0
            and self.x != self.t
            and m - self.x != self.t
        )


@dataclass(frozen=True)
class TriangularHit:
    """``T(x) == T(d) (mod m)`` with ``T(d) < m`` and ``x`` not ``d`` or ``m - d - 1``."""

    x: int
    d: int
    verdict: ClassVar[Verdict] = Verdict.COMPOSITE

    @property
    def index(self) -> int:
        return self.x

    def is_valid(self, m: int) -> bool:
        return (
            0 <= self.d
            and triangular(self.d) < m
            and 0 <= self.x < m
            and (triangular(self.x) - triangular(self.d)) % m == 0
            and self.x != self.d
            and m - self.x - 1 != self.d
        )


@dataclass(frozen=True)
class ZeroSquare:
    """``x*x == 0 (mod m)`` with ``0 < x < m``: some prime divides ``m`` twice."""

    x: int
    verdict: ClassVar[Verdict] = Verdict.NOT_SQUAREFREE

    @property
    def index(self) -> int:
        return self.x

    def is_valid(self, m: int) -> bool:
        return 0 < self.x < m and self.x * self.x % m == 0


@dataclass(frozen=True)
class ZeroTriangular:
    """``T(x) == 0 (mod m)`` with ``x`` not 0 or ``m - 1``."""

    x: int
    verdict: ClassVar[Verdict] = Verdict.COMPOSITE

    @property
    def index(self) -> int:
        return self.x

    def is_valid(self, m: int) -> bool:
        return 0 < self.x < m - 1 and triangular(self.x) % m == 0


Witness = InvariantHit | QuadraticHit | TriangularHit | ZeroSquare | ZeroTriangular


# -- records -------------------------------------------------------------------


@dataclass
class TraceRow:
    """One scan iteration, one row of a trace table.

    ``c2``/``c3`` are chain residues, ``p2``/``p3`` the nearest square (or
    triangular number) at or above them, ``x2``/``x3`` the indices that
    produced ``c2``/``c3``.  Absent cells are ``None``.
    """

    iteration: int
    c1: int | None = None
    c2: int | None = None
    p2: int | None = None
    c3: int | None = None
    p3: int | None = None
    note: str | None = None
    x2: int | None = None
    x3: int | None = None

    FIELDS: ClassVar[tuple[str, ...]] = (
        "iteration", "c1", "c2", "p2", "c3", "p3", "note", "x2", "x3",
    )

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ScanConfig:
    algorithm: str = "invariant"
    direction: Direction = Direction.PAPER
    trace: bool = False
    mode: Mode = Mode.CANONICAL
    workers: int = 1
    segment_size: int | None = None

    def __post_init__(self) -> None:
        if self.algorithm != "all":
            Algorithm(self.algorithm)
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.segment_size is not None and self.segment_size < 1:
            raise ValueError("segment_size must be positive")

    @property
    def algorithms(self) -> list[Algorithm]:
        if self.algorithm == "all":
            return list(Algorithm)
        return [Algorithm(self.algorithm)]


@dataclass
class ScanOutcome:
    m: int
    algorithm: Algorithm
    direction: Direction
    verdict: Verdict
    witness: Witness | None
    iterations: int
    trace: list[TraceRow] | None = field(default=None, repr=False)

    @property
    def hit_iteration(self) -> int | None:
        """Table label of the row that produced the witness."""
        if self.witness is None:
            return None
        return _label(self.algorithm, self.iterations - 1)


@dataclass
class SegmentResult:
    lo: int
    hi: int
    witness: Witness | None = None
    key: int | None = None
    steps: int = 0
    cancelled: bool = False


class CancelToken(Protocol):
    def is_set(self) -> bool: ...


# -- geometry of a scan ----------------------------------------------------------


def scan_bounds(m: int, algorithm: Algorithm | str) -> tuple[int, int]:
    """Inclusive index range ``(lo, hi)``; empty when ``lo > hi``."""
    m = Modulus(m)
    algorithm = Algorithm(algorithm)
    hi = m.half
    if algorithm is Algorithm.INVARIANT:
        return 2, hi
    if algorithm is Algorithm.QUADRATIC:
        # first x with x*x >= m; below it every square is its own remainder
        return math.isqrt(m - 1) + 1, hi
    return tri_root(m - 1) + 1, hi


def row_count(m: int, algorithm: Algorithm | str) -> int:
    algorithm = Algorithm(algorithm)
    lo, hi = scan_bounds(m, algorithm)
    if hi < lo:
        return 0
    if algorithm is Algorithm.TRIANGULAR:
        return (hi - lo) // 2 + 1
    return hi - lo + 1


def _default_ascending(algorithm: Algorithm) -> bool:
    return algorithm is Algorithm.INVARIANT


def _row_index(m: int, algorithm: Algorithm, x: int, direction: Direction) -> int:
    lo, hi = scan_bounds(m, algorithm)
    if algorithm is Algorithm.TRIANGULAR:
        r = (hi - x) // 2
        if direction is Direction.REVERSED:
            r = row_count(m, algorithm) - 1 - r
        return r
    ascending = _default_ascending(algorithm) ^ (direction is Direction.REVERSED)
    return x - lo if ascending else hi - x


def _label(algorithm: Algorithm, row: int) -> int:
    # the invariant tables count iterations from 1, the others from 0
    return row + 1 if algorithm is Algorithm.INVARIANT else row


def order_key(m: int, algorithm: Algorithm | str, x: int,
              direction: Direction | str = Direction.PAPER) -> int:
    """Position of index ``x`` in the sequential check order."""
    algorithm, direction = Algorithm(algorithm), Direction(direction)
    row = _row_index(m, algorithm, x, direction)
    if algorithm is not Algorithm.TRIANGULAR:
        return row
    _, hi = scan_bounds(m, algorithm)
    # default order checks x-1 (odd offset from hi) before x; reversed flips that
    first = ((hi - x) % 2 == 1) ^ (direction is Direction.REVERSED)
    return 2 * row + (0 if first else 1)


def partition(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Split ``[lo, hi]`` into consecutive inclusive chunks of at most ``size``."""
    if size < 1:
        raise ValueError("segment size must be positive")
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


# -- segment walkers -------------------------------------------------------------


def _square_segment(m, algorithm, a, b, ascending, direction, cancel, rows):
    res = SegmentResult(a, b)
    n = b - a + 1
    chain = seed_square_chain(m, a if ascending else b)
    step = chain.step_up if ascending else chain.step_down
    invariant = algorithm is Algorithm.INVARIANT
    isqrt = math.isqrt
    for k in range(n):
        if cancel is not None and k % CANCEL_CHECK_EVERY == 0 and k and cancel.is_set():
            res.cancelled = True
            break
        x, v = chain.x, chain.v
        res.steps += 1
        hit = None
        if v == 0:
            hit = ZeroSquare(x)
        elif invariant:
            if v == x:
                hit = InvariantHit(x - 1, x)
        else:
            t = isqrt(v)
            if t * t == v:
                hit = QuadraticHit(x, t)
        if rows is not None:
            row = _label(algorithm, _row_index(m, algorithm, x, direction))
            if invariant:
                rows.append(TraceRow(row, c1=x, c2=v))
            else:
                rows.append(TraceRow(row, c2=v, p2=nearest_square_at_least(v), x2=x))
            if hit is not None:
                rows[-1].note = _hit_note(hit)
        if hit is not None:
            res.witness = hit
            res.key = order_key(m, algorithm, x, direction)
            break
        if k + 1 < n:
            step()
    return res


def _triangular_hit(x: int, v: int) -> Witness | None:
    if v == 0:
        return ZeroTriangular(x)
    d = tri_root(v)
    if d * (d + 1) // 2 == v:
        return TriangularHit(x, d)
    return None


def _triangular_segment(m, a, b, descending, direction, cancel, rows):
    res = SegmentResult(a, b)
    _, hi = scan_bounds(m, Algorithm.TRIANGULAR)
    first_row, last_row = (hi - b) // 2, (hi - a) // 2
    if descending:
        rows_iter = range(first_row, last_row + 1)
    else:
        rows_iter = range(last_row, first_row - 1, -1)
    chain_a = chain_b = None
    for k, i in enumerate(rows_iter):
        if cancel is not None and k % CANCEL_CHECK_EVERY == 0 and k and cancel.is_set():
            res.cancelled = True
            break
        xa = hi - 2 * i
        xb = xa - 1
        va = vb = None
        if a <= xa <= b:
            if chain_a is None:
                chain_a = seed_triangular_chain(m, xa)
            else:
                chain_a.step_down() if descending else chain_a.step_up()
            va = chain_a.v
        if a <= xb <= b:
            if chain_b is None:
                chain_b = seed_triangular_chain(m, xb)
            else:
                chain_b.step_down() if descending else chain_b.step_up()
            vb = chain_b.v
        if rows is not None:
            row = TraceRow(_label(Algorithm.TRIANGULAR,
                                  _row_index(m, Algorithm.TRIANGULAR, xa, direction)))
            if vb is not None:
                row.c2, row.p2, row.x2 = vb, nearest_triangular_at_least(vb), xb
            if va is not None:
                row.c3, row.p3, row.x3 = va, nearest_triangular_at_least(va), xa
            rows.append(row)
        order = ((xb, vb), (xa, va)) if descending else ((xa, va), (xb, vb))
        for x, v in order:
            if v is None:
                continue
            res.steps += 1
            hit = _triangular_hit(x, v)
            if hit is not None:
                if rows is not None:
                    rows[-1].note = _hit_note(hit)
                res.witness = hit
                res.key = order_key(m, Algorithm.TRIANGULAR, x, direction)
                return res
    return res


def _hit_note(hit: Witness) -> str:
    if isinstance(hit, InvariantHit):
        return f"C2 == C1 == {hit.d}: composite"
    if isinstance(hit, ZeroSquare):
        return f"C2 == 0 at {hit.x}: repeated prime factor"
    if isinstance(hit, QuadraticHit):
        return f"{hit.x}^2 == {hit.t}^2: composite"
    if isinstance(hit, TriangularHit):
        return f"T({hit.x}) == T({hit.d}): composite"
    return f"T({hit.x}) == 0: composite"


def scan_segment(m: int, algorithm: Algorithm | str, lo: int, hi: int,
                 direction: Direction | str = Direction.PAPER,
                 cancel: CancelToken | None = None,
                 rows: list[TraceRow] | None = None) -> SegmentResult:
    """Run the per-index checks of one scan over ``lo <= x <= hi`` only.

    The chain is seeded directly at the first index, so any segment costs
    ``O(log m)`` to start.  Returns the first hit in scan order, if any.
    """
    m = Modulus(m)
    algorithm, direction = Algorithm(algorithm), Direction(direction)
    full_lo, full_hi = scan_bounds(m, algorithm)
    if lo > hi or lo < full_lo or hi > full_hi:
        raise ValueError(
            f"segment [{lo}, {hi}] is not inside the {algorithm.value} range "
            f"[{full_lo}, {full_hi}] for m={m}"
        )
    if algorithm is Algorithm.TRIANGULAR:
        return _triangular_segment(m, lo, hi, direction is Direction.PAPER,
                                   direction, cancel, rows)
    ascending = _default_ascending(algorithm) ^ (direction is Direction.REVERSED)
    return _square_segment(m, algorithm, lo, hi, ascending, direction, cancel, rows)


def outcome_from_segments(m: int, algorithm: Algorithm | str,
                          direction: Direction | str,
                          results: list[SegmentResult]) -> ScanOutcome:
    """Merge segment results: the hit with the smallest order key wins."""
    m = Modulus(m)
    algorithm, direction = Algorithm(algorithm), Direction(direction)
    hits = [r for r in results if r.witness is not None]
    if hits:
        best = min(hits, key=lambda r: r.key)
        w = best.witness
        iterations = _row_index(m, algorithm, w.index, direction) + 1
        return ScanOutcome(m, algorithm, direction, w.verdict, w, iterations)
    if any(r.cancelled for r in results):
        raise RuntimeError("segments were cancelled without any hit")
    return ScanOutcome(m, algorithm, direction, Verdict.PRIME, None,
                       row_count(m, algorithm))


def _full_scan(m: int, algorithm: Algorithm, opts: ScanConfig | None) -> ScanOutcome:
    opts = opts or ScanConfig(algorithm=algorithm.value)
    m = Modulus(m)
    lo, hi = scan_bounds(m, algorithm)
    rows = [] if opts.trace else None
    if hi < lo:
        results = []
    else:
        results = [scan_segment(m, algorithm, lo, hi, opts.direction, rows=rows)]
    outcome = outcome_from_segments(m, algorithm, opts.direction, results)
    if rows is not None:
        if outcome.verdict is Verdict.PRIME and rows:
            rows[-1].note = "prime"
        outcome.trace = rows
    return outcome


def invariant_scan(m: int, opts: ScanConfig | None = None) -> ScanOutcome:
    """Look for ``C1*C1 == C1 (mod m)`` with ``C1`` running from 2 to ``(m-1)/2``.

    >>> invariant_scan(55).witness
    InvariantHit(c=10, d=11)
    """
    return _full_scan(m, Algorithm.INVARIANT, opts)


def quadratic_scan(m: int, opts: ScanConfig | None = None) -> ScanOutcome:
    """Look for ``x*x % m`` being a perfect square, ``x`` from ``(m-1)/2`` down.

    >>> quadratic_scan(93).witness
    QuadraticHit(x=38, t=7)
    """
    return _full_scan(m, Algorithm.QUADRATIC, opts)


def triangular_scan(m: int, opts: ScanConfig | None = None) -> ScanOutcome:
    """Look for ``T(x) % m`` being a triangular number on two interleaved chains.

    >>> triangular_scan(93).witness
    TriangularHit(x=42, d=11)
    """
    return _full_scan(m, Algorithm.TRIANGULAR, opts)


_SCANS = {
    Algorithm.INVARIANT: invariant_scan,
    Algorithm.QUADRATIC: quadratic_scan,
    Algorithm.TRIANGULAR: triangular_scan,
}


def run_scan(m: int, algorithm: Algorithm | str,
             opts: ScanConfig | None = None) -> ScanOutcome:
    return _SCANS[Algorithm(algorithm)](m, opts)
