"""Turning composite witnesses into divisors of ``m``.

Every witness says that ``m`` divides a product of two numbers without
dividing either one, so a gcd with ``m`` splits it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Modulus, gcd
from .oracle import trial_division_factorize
from .scans import (
    InvariantHit,
    QuadraticHit,
    TriangularHit,
    Witness,
    ZeroSquare,
    ZeroTriangular,
)

__all__ = [
    "FactorHint",
    "factor_hint",
    "factors_from_invariant",
    "factors_from_quadratic",
    "factors_from_triangular",
    "paper_cd_method",
]

GCD = "gcd"
PAPER_CD_PRODUCT = "paper_cd_product"


@dataclass(frozen=True)
class FactorHint:
    witness: Witness
    factors: list[int]
    method: str = GCD
    remark: str | None = None


def _split(m: int, *values: int) -> list[int]:
    out = []
    for v in values:
        g = gcd(v % m, m)
        if 1 < g < m and g not in out:
            out.append(g)
    return out


def factors_from_invariant(hit: InvariantHit, m: int) -> FactorHint:
    m = Modulus(m)
    if not hit.is_valid(m):
        raise ValueError(f"{hit} is not a non-trivial invariant tuple mod {m}")
    return FactorHint(hit, _split(m, hit.d, hit.c))


def factors_from_quadratic(hit: QuadraticHit | ZeroSquare, m: int) -> FactorHint:
    """``m | (x + t)(x - t)``; a zero square is the case ``t = 0``."""
    m = Modulus(m)
    if not hit.is_valid(m):
        raise ValueError(f"{hit} is not a non-trivial square collision mod {m}")
    if isinstance(hit, ZeroSquare):
        return FactorHint(hit, _split(m, hit.x))
    return FactorHint(hit, _split(m, hit.x + hit.t, hit.x - hit.t))


def factors_from_triangular(hit: TriangularHit | ZeroTriangular, m: int) -> FactorHint:
    """``x*x + x == d*d + d`` rearranges to ``m | (x - d)(x + d + 1)``."""
    m = Modulus(m)
    if not hit.is_valid(m):
        raise ValueError(f"{hit} is not a non-trivial triangular collision mod {m}")
    if isinstance(hit, ZeroTriangular):
        return FactorHint(hit, _split(m, hit.x, hit.x + 1))
    return FactorHint(hit, _split(m, hit.x - hit.d, hit.x + hit.d + 1))


def paper_cd_method(hit: InvariantHit, m: int) -> FactorHint:
    """Prime factors of ``g = c*d / m``.

    This is the recipe from the worked example, kept for comparison.  The
    primes of ``g`` need not divide ``m``: for ``(10, 11)`` and ``m = 55``,
    ``g = 2``.
    """
    m = Modulus(m)
    if not hit.is_valid(m):
        raise ValueError(f"{hit} is not a non-trivial invariant tuple mod {m}")
    g = hit.c * hit.d // m
    primes = sorted(set(trial_division_factorize(g))) if g > 1 else []
    return FactorHint(
        hit, primes, PAPER_CD_PRODUCT,
        remark="divisors of g = c*d/m, not necessarily divisors of m",
    )


def factor_hint(witness: Witness, m: int) -> FactorHint:
    if isinstance(witness, InvariantHit):
        return factors_from_invariant(witness, m)
    if isinstance(witness, (QuadraticHit, ZeroSquare)):
        return factors_from_quadratic(witness, m)
    if isinstance(witness, (TriangularHit, ZeroTriangular)):
        return factors_from_triangular(witness, m)
    raise TypeError(f"unknown witness {witness!r}")
