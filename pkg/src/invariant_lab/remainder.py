"""Classification of residues by how their square or triangular value collides.

A residue ``x`` is a *trivial root* when its square (triangular value) is
already below ``m``, a *symmetric* trivial root when its mirror ``m - x``
(``m - x - 1``) is, and *non-trivial* when its value mod ``m`` equals the value
of some trivial root ``d`` other than those two.  Non-trivial residues only
exist for composite ``m``.

Invariants are idempotents ``d*d == d (mod m)``; the matching anti-invariant
is ``c = d - 1`` with ``c*c == -c (mod m)``, so ``c*(c + 1) == 0 (mod m)``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from .arith import Modulus, isqrt, triangular

__all__ = [
    "InvariantTuple",
    "QuadraticClass",
    "RootKind",
    "TriangularClass",
    "TriangularZeroTuple",
    "classify_quadratic",
    "classify_triangular",
    "enumerate_invariant_tuples",
    "enumerate_nontrivial_quadratic",
    "enumerate_nontrivial_triangular",
    "enumerate_triangular_zero_tuples",
    "infer_quadratic_from_tuple",
    "infer_triangular_from_tuple",
    "quadratic_symmetric",
    "small_square_roots",
    "small_triangular_roots",
    "triangular_symmetric",
]


class RootKind(enum.Enum):
    TRIVIAL_ROOT = "trivial"
    SYMMETRIC_TRIVIAL_ROOT = "symmetric-trivial"
    NON_TRIVIAL = "non-trivial"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class QuadraticClass:
    kind: RootKind
    d: int | None = None


@dataclass(frozen=True)
class TriangularClass:
    kind: RootKind
    d: int | None = None


@dataclass(frozen=True)
class InvariantTuple:
    """Anti-invariant ``c`` and invariant ``d = c + 1`` modulo ``m``."""

    c: int
    d: int
    m: int

    @property
    def trivial(self) -> bool:
        return self.c in (0, self.m - 1)


@dataclass(frozen=True)
class TriangularZeroTuple:
    """``T(c) == 0`` and ``T(d) == d`` modulo ``m`` with ``d = c + 1``."""

    c: int
    d: int
    m: int

    @property
    def trivial(self) -> bool:
        return self.c in (0, self.m - 1)


def _residue(x: int, m: int) -> None:
    if not 0 <= x < m:
        raise ValueError(f"residue {x} outside [0, {m})")


def quadratic_symmetric(s: int, m: int) -> int:
    m = Modulus(m)
    _residue(s, m)
    return (m - s) % m


def triangular_symmetric(s: int, m: int) -> int:
    m = Modulus(m)
    _residue(s, m)
    return (m - s - 1) % m


@functools.lru_cache(maxsize=64)
def small_square_roots(m: int) -> dict[int, int]:
    """Map ``d*d -> d`` for every ``d`` with ``d*d < m``."""
    return {d * d: d for d in range(isqrt(m - 1) + 1)}


@functools.lru_cache(maxsize=64)
def small_triangular_roots(m: int) -> dict[int, int]:
    """Map ``T(d) -> d`` for every ``d`` with ``T(d) < m``."""
    table = {}
    d = 0
    while (t := triangular(d)) < m:
        table[t] = d
        d += 1
    return table


def classify_quadratic(x: int, m: int) -> QuadraticClass:
    m = Modulus(m)
    _residue(x, m)
    if x * x < m:
        return QuadraticClass(RootKind.TRIVIAL_ROOT, x)
    if (m - x) * (m - x) < m:
        return QuadraticClass(RootKind.SYMMETRIC_TRIVIAL_ROOT, m - x)
    d = small_square_roots(m).get(x * x % m)
    if d is None:
        return QuadraticClass(RootKind.UNMATCHED)
    return QuadraticClass(RootKind.NON_TRIVIAL, d)


def classify_triangular(x: int, m: int) -> TriangularClass:
    m = Modulus(m)
    _residue(x, m)
    if triangular(x) < m:
        return TriangularClass(RootKind.TRIVIAL_ROOT, x)
    mirror = m - x - 1
    if triangular(mirror) < m:
        return TriangularClass(RootKind.SYMMETRIC_TRIVIAL_ROOT, mirror)
    d = small_triangular_roots(m).get(triangular(x) % m)
    if d is None:
        return TriangularClass(RootKind.UNMATCHED)
    return TriangularClass(RootKind.NON_TRIVIAL, d)


def enumerate_nontrivial_quadratic(m: int) -> list[int]:
    m = Modulus(m)
    return [x for x in range(m) if classify_quadratic(x, m).kind is RootKind.NON_TRIVIAL]


def enumerate_nontrivial_triangular(m: int) -> list[int]:
    m = Modulus(m)
    return [x for x in range(m) if classify_triangular(x, m).kind is RootKind.NON_TRIVIAL]


def _prime_power_parts(m: int) -> list[int]:
    parts = []
    p = 3
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            parts.append(q)
        p += 2
    if m > 1:
        parts.append(m)
    return parts


def _idempotents(m: int) -> list[int]:
    # An idempotent is 0 or 1 modulo each prime-power part; glue the choices by CRT.
    found = [0]
    modulus = 1
    for q in _prime_power_parts(m):
        nxt = []
        for r in found:
            for target in (0, 1):
                # solve y == r (mod modulus), y == target (mod q)
                k = (target - r) * pow(modulus, -1, q) % q
                nxt.append(r + modulus * k)
        found = nxt
        modulus *= q
    return sorted(found)


def enumerate_invariant_tuples(m: int) -> list[InvariantTuple]:
    """All ``(c, c + 1)`` with ``c*(c + 1) == 0 (mod m)``, ordered by ``c``.

    Built from the prime-power structure of ``m``: there are exactly
    ``2**beta`` of them, where ``beta`` counts distinct prime factors.
    """
    m = Modulus(m)
    return sorted(
        (InvariantTuple((d - 1) % m, d, m) for d in _idempotents(m)),
        key=lambda t: t.c,
    )


def enumerate_triangular_zero_tuples(m: int) -> list[TriangularZeroTuple]:
    # m odd: T(c) == 0 (mod m)  <=>  c*(c + 1) == 0 (mod m)
    return [TriangularZeroTuple(t.c, t.d, t.m) for t in enumerate_invariant_tuples(m)]


def infer_quadratic_from_tuple(tup: InvariantTuple, s: int, m: int) -> int:
    """Residue ``e = 2*s*c + s`` whose square matches ``s*s`` modulo ``m``."""
    m = Modulus(m)
    if s < 0 or s * s >= m:
        raise ValueError(f"need 0 <= s and s*s < m, got s={s}")
    return (2 * s * tup.c + s) % m


def infer_triangular_from_tuple(tup: TriangularZeroTuple, s: int, m: int) -> int:
    """Residue ``n = 2*c*s + c + s`` whose triangular value matches ``T(s)``."""
    m = Modulus(m)
    if s < 0 or triangular(s) >= m:
        raise ValueError(f"need 0 <= s and T(s) < m, got s={s}")
    return (2 * tup.c * s + tup.c + s) % m
