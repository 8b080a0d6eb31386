"""Brute-force reference results and the solution-count formulas.

Nothing here relies on the scans; the counts marked ``actual_*`` come from
exhaustive enumeration only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .arith import Modulus, triangular
from .remainder import (
    classify_quadratic,
    classify_triangular,
    enumerate_nontrivial_quadratic,
    enumerate_nontrivial_triangular,
)

__all__ = [
    "COUNT_REPORT_LIMIT",
    "CountReport",
    "brute_invariant_tuples",
    "count_report",
    "is_prime_power",
    "trial_division_factorize",
    "trial_division_is_prime",
    "unit_root_check",
]

COUNT_REPORT_LIMIT = 10**5


def trial_division_is_prime(m: int) -> bool:
    if m < 2:
        raise ValueError(f"primality is defined for m >= 2, got {m}")
    if m % 2 == 0:
        return m == 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            return False
        p += 2
    return True


def trial_division_factorize(m: int) -> list[int]:
    """Prime factors of ``m`` with multiplicity, ascending."""
    if m < 2:
        raise ValueError(f"factorization is defined for m >= 2, got {m}")
    out = []
    while m % 2 == 0:
        out.append(2)
        m //= 2
    p = 3
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 2
    if m > 1:
        out.append(m)
    return out


def is_prime_power(m: int) -> bool:
    return len(set(trial_division_factorize(m))) == 1


def brute_invariant_tuples(m: int) -> list[tuple[int, int]]:
    """Every ``(c, c + 1)`` with ``c*(c + 1) == 0 (mod m)``, by exhaustion."""
    return [(c, (c + 1) % m) for c in range(m) if c * (c + 1) % m == 0]


def unit_root_check(m: int) -> bool:
    """True when the only square roots of 1 modulo ``m`` are 1 and ``m - 1``."""
    m = Modulus(m)
    return [n for n in range(m) if n * n % m == 1] == [1, m - 1]


@dataclass
class CountReport:
    m: int
    beta: int
    epsilon: int
    gamma: int
    predicted_invariants: int
    predicted_quadratic: int
    predicted_triangular: int
    actual_invariants: int
    actual_quadratic: int
    actual_triangular: int
    # gamma counted over trivial roots d with gcd(2d + 1, m) == 1
    gamma_alt: int = 0
    predicted_triangular_alt: int = 0
    # non-trivial residues matched by a root d with gcd(d, m) == 1
    # (quadratic) or gcd(2d + 1, m) == 1 (triangular)
    actual_quadratic_coprime: int = 0
    actual_triangular_coprime: int = 0
    discrepancy_flags: dict[str, bool] = field(default_factory=dict)

    @property
    def mismatches(self) -> list[str]:
        return [k for k, ok in self.discrepancy_flags.items() if not ok]


def count_report(m: int) -> CountReport:
    m = Modulus(m)
    if m > COUNT_REPORT_LIMIT:
        raise ValueError(f"count_report is limited to m <= {COUNT_REPORT_LIMIT}")
    beta = len(set(trial_division_factorize(m)))
    nontrivial_tuples = 2**beta - 2
    square_roots = range(isqrt(m - 1) + 1)
    tri_roots = range(_tri_limit(m) + 1)
    epsilon = sum(1 for n in square_roots if gcd(n, m) == 1)
    gamma = sum(1 for n in tri_roots if gcd(n, m) == 1)
    gamma_alt = sum(1 for n in tri_roots if gcd(2 * n + 1, m) == 1)

    quadratic = enumerate_nontrivial_quadratic(m)
    tri = enumerate_nontrivial_triangular(m)
    quad_coprime = sum(1 for x in quadratic if gcd(classify_quadratic(x, m).d, m) == 1)
    tri_coprime = sum(1 for x in tri if gcd(2 * classify_triangular(x, m).d + 1, m) == 1)
    actual_invariants = sum(1 for c, _ in brute_invariant_tuples(m) if c not in (0, m - 1))

    report = CountReport(
        m=int(m),
        beta=beta,
        epsilon=epsilon,
        gamma=gamma,
        predicted_invariants=nontrivial_tuples,
        predicted_quadratic=epsilon * nontrivial_tuples,
        predicted_triangular=gamma * nontrivial_tuples,
        actual_invariants=actual_invariants,
        actual_quadratic=len(quadratic),
        actual_triangular=len(tri),
        gamma_alt=gamma_alt,
        predicted_triangular_alt=gamma_alt * nontrivial_tuples,
        actual_quadratic_coprime=quad_coprime,
        actual_triangular_coprime=tri_coprime,
    )
    report.discrepancy_flags = {
        "invariants": report.predicted_invariants == report.actual_invariants,
        "quadratic": report.predicted_quadratic == report.actual_quadratic,
        "triangular": report.predicted_triangular == report.actual_triangular,
        "triangular_alt": report.predicted_triangular_alt == report.actual_triangular,
    }
    return report


def _tri_limit(m: int) -> int:
    d = 0
    while triangular(d + 1) < m:
        d += 1
    return d
