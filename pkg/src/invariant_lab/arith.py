"""Exact modular arithmetic, integer square/triangular roots and residue chains.

The chains hold ``x**2 mod m`` (resp. ``T(x) mod m``) and move along ``x`` with
constant-time additive updates, which is what makes the scans linear and lets
any segment of a scan start anywhere.
"""

from __future__ import annotations

import math

__all__ = [
    "MAX_MODULUS",
    "Modulus",
    "SquareChain",
    "TriangularChain",
    "gcd",
    "is_perfect_square",
    "is_triangular",
    "isqrt",
    "nearest_square_at_least",
    "nearest_triangular_at_least",
    "seed_square_chain",
    "seed_triangular_chain",
    "tri_root",
    "triangular",
]

MAX_MODULUS = 1 << 62


class Modulus(int):
    """An odd integer ``3 <= m <= 2**62``.

    Behaves exactly like ``int``; construction is the validation step.
    """

    def __new__(cls, m: int) -> "Modulus":
        if isinstance(m, Modulus):
            return m
        if isinstance(m, bool) or not isinstance(m, int):
            raise TypeError(f"modulus must be an int, got {type(m).__name__}")
        if m < 3 or m % 2 == 0:
            raise ValueError(f"modulus must be odd and >= 3, got {m}")
        if m > MAX_MODULUS:
            raise ValueError(f"modulus {m} exceeds 2**62")
        return super().__new__(cls, m)

    @property
    def half(self) -> int:
        """``(m - 1) // 2``, the upper end of every scan."""
        return (self - 1) // 2


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("gcd arguments must be nonnegative")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def _nonneg(n: int) -> None:
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")


def isqrt(n: int) -> int:
    _nonneg(n)
    return math.isqrt(n)


def nearest_square_at_least(n: int) -> int:
    """Smallest perfect square ``k*k >= n``."""
    r = isqrt(n)
    if r * r == n:
        return n
    return (r + 1) * (r + 1)


def is_perfect_square(n: int) -> bool:
    r = isqrt(n)
    return r * r == n


def triangular(n: int) -> int:
    return n * (n + 1) // 2


def tri_root(n: int) -> int:
    """Largest ``d`` with ``triangular(d) <= n``."""
    _nonneg(n)
    return (math.isqrt(8 * n + 1) - 1) // 2


def nearest_triangular_at_least(n: int) -> int:
    d = tri_root(n)
    t = d * (d + 1) // 2
    if t == n:
        return n
    return t + d + 1


def is_triangular(n: int) -> bool:
    d = tri_root(n)
    return d * (d + 1) // 2 == n


class SquareChain:
    """``v == x*x % m``, stepped one position at a time."""

    __slots__ = ("m", "x", "v")

    def __init__(self, m: int, x: int, v: int) -> None:
        self.m = m
        self.x = x
        self.v = v

    def step_down(self) -> int:
        x = self.x
        self.v = (self.v + self.m - (x + x - 1)) % self.m
        self.x = x - 1
        return self.v

    def step_up(self) -> int:
        x = self.x
        self.v = (self.v + x + x + 1) % self.m
        self.x = x + 1
        return self.v

    def __repr__(self) -> str:
        return f"SquareChain(m={self.m}, x={self.x}, v={self.v})"


class TriangularChain:
    """``v == T(x) % m``, stepped two positions at a time."""

    __slots__ = ("m", "x", "v")

    def __init__(self, m: int, x: int, v: int) -> None:
        self.m = m
        self.x = x
        self.v = v

    def step_down(self) -> int:
        # T(x-2) = T(x) - (2x - 1)
        x = self.x
        self.v = (self.v + self.m - (x + x - 1)) % self.m
        self.x = x - 2
        return self.v

    def step_up(self) -> int:
        # T(x+2) = T(x) + (2x + 3)
        x = self.x
        self.v = (self.v + x + x + 3) % self.m
        self.x = x + 2
        return self.v

    def __repr__(self) -> str:
        return f"TriangularChain(m={self.m}, x={self.x}, v={self.v})"


def _check_index(m: int, x: int) -> Modulus:
    m = Modulus(m)
    if not 0 <= x < m:
        raise ValueError(f"chain index {x} outside [0, {m})")
    return m


def seed_square_chain(m: int, x: int) -> SquareChain:
    m = _check_index(m, x)
    return SquareChain(int(m), x, x * x % m)


def seed_triangular_chain(m: int, x: int) -> TriangularChain:
    m = _check_index(m, x)
    return TriangularChain(int(m), x, x * (x + 1) // 2 % m)
