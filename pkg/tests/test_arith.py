import math
import random

import pytest
from hypothesis import given, strategies as st

from invariant_lab.arith import (
    MAX_MODULUS,
    Modulus,
    gcd,
    is_perfect_square,
    is_triangular,
    isqrt,
    nearest_square_at_least,
    nearest_triangular_at_least,
    seed_square_chain,
    seed_triangular_chain,
    tri_root,
    triangular,
)

odd_moduli = st.integers(min_value=1, max_value=(MAX_MODULUS - 1) // 2).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("a, b, expected", [(45, 93, 3), (1, 97, 1), (11, 55, 11)])
def test_gcd(a, b, expected):
    assert gcd(a, b) == expected


def test_gcd_rejects_zero_pair():
    with pytest.raises(ValueError):
        gcd(0, 0)


@pytest.mark.parametrize("bad", [0, 1, 2, 4, 100, -7, MAX_MODULUS + 1])
def test_modulus_rejects(bad):
    with pytest.raises(ValueError):
        Modulus(bad)


def test_modulus_rejects_non_int():
    with pytest.raises(TypeError):
        Modulus(15.0)


def test_modulus_is_an_int():
    m = Modulus(93)
    assert m == 93 and m.half == 46 and Modulus(m) is m


def test_square_helpers():
    assert nearest_square_at_least(70) == 81
    assert nearest_square_at_least(49) == 49
    assert isqrt(0) == 0
    assert nearest_square_at_least(0) == 0
    assert is_perfect_square(49) and not is_perfect_square(50)


def test_triangular_helpers():
    assert nearest_triangular_at_least(12) == 15
    assert triangular(6) == 21
    assert tri_root(21) == 6
    assert tri_root(20) == 5
    assert is_triangular(66) and not is_triangular(25)


def test_triangular_helpers_against_table():
    table = [triangular(d) for d in range(200)]
    for n in range(table[-1]):
        above = min(t for t in table if t >= n)
        assert nearest_triangular_at_least(n) == above
        assert tri_root(n) == max(d for d, t in enumerate(table) if t <= n)
        assert is_triangular(n) == (n in table)


@given(st.integers(min_value=0, max_value=10**30))
def test_nearest_square_gap(n):
    sq = nearest_square_at_least(n)
    assert sq >= n and is_perfect_square(sq)
    assert sq - n < 2 * isqrt(n) + 2
    r = isqrt(sq)
    assert r == 0 or (r - 1) ** 2 < n


@given(st.integers(min_value=0, max_value=10**30))
def test_tri_root_brackets(n):
    d = tri_root(n)
    assert triangular(d) <= n < triangular(d + 1)


def test_chain_seeds():
    assert seed_square_chain(93, 46).v == 70
    assert seed_triangular_chain(93, 46).v == 58
    assert seed_square_chain(15, 0).v == 0


@pytest.mark.parametrize("x", [-1, 93, 1000])
def test_chain_seed_out_of_range(x):
    with pytest.raises(ValueError):
        seed_square_chain(93, x)
    with pytest.raises(ValueError):
        seed_triangular_chain(93, x)


def test_segment_seeding_consistency_exhaustive_small():
    # stepping from x lands where seeding at the target would
    for m in range(3, 302, 2):
        sq = seed_square_chain(m, m - 1)
        for x in range(m - 1, 0, -1):
            assert sq.v == seed_square_chain(m, x).v
            sq.step_down()
        for start in (m - 1, m - 2):
            tc = seed_triangular_chain(m, start)
            while tc.x >= 0:
                assert tc.v == seed_triangular_chain(m, tc.x).v
                tc.step_down()


def test_segment_seeding_consistency_sampled_to_10k():
    rng = random.Random(20261016)
    for _ in range(400):
        m = rng.randrange(3, 10**4 + 1, 2)
        x = rng.randrange(m)
        k = rng.randrange(x + 1)
        sq = seed_square_chain(m, x)
        for _ in range(k):
            sq.step_down()
        assert (sq.x, sq.v) == (x - k, seed_square_chain(m, x - k).v)
        k2 = k // 2
        tc = seed_triangular_chain(m, x)
        for _ in range(k2):
            tc.step_down()
        assert (tc.x, tc.v) == (x - 2 * k2, seed_triangular_chain(m, x - 2 * k2).v)


@given(odd_moduli.filter(lambda m: m >= 3), st.data())
def test_square_chain_matches_recompute(m, data):
    x = data.draw(st.integers(min_value=1, max_value=m - 2))
    chain = seed_square_chain(m, x)
    chain.step_down()
    assert chain.v == (x - 1) ** 2 % m
    chain.step_up()
    chain.step_up()
    assert chain.v == (x + 1) ** 2 % m


@given(odd_moduli.filter(lambda m: m >= 5), st.data())
def test_triangular_chain_matches_recompute(m, data):
    x = data.draw(st.integers(min_value=2, max_value=m - 3))
    chain = seed_triangular_chain(m, x)
    chain.step_down()
    assert chain.v == triangular(x - 2) % m
    chain.step_up()
    chain.step_up()
    assert chain.v == triangular(x + 2) % m


def test_large_modulus_exact():
    m = MAX_MODULUS - 1
    x = m - 2
    assert seed_square_chain(m, x).v == pow(x, 2, m) == 4
    assert math.gcd(m, 3) in (1, 3)
