import random
from concurrent.futures import ProcessPoolExecutor

import pytest

from invariant_lab.parallel import parallel_scan, segment_plan, verify_range
from invariant_lab.scans import Algorithm, ScanConfig, run_scan


@pytest.fixture(scope="module")
def pool():
    with ProcessPoolExecutor(4) as ex:
        yield ex


def test_segment_plan_covers_range():
    config = ScanConfig(workers=3)
    plan = segment_plan(100003, Algorithm.QUADRATIC, config)
    assert len(plan) == 12
    assert all(b + 1 == a for (_, b), (a, _) in zip(plan, plan[1:]))


@pytest.mark.parametrize("direction", ["paper", "reversed"])
def test_canonical_parallel_matches_sequential(pool, direction):
    rng = random.Random(1)
    config = ScanConfig(workers=4, direction=direction, segment_size=97)
    for m in [100003, 100001, 95477] + [rng.randrange(10**4, 10**5) | 1 for _ in range(10)]:
        for alg in Algorithm:
            par = parallel_scan(m, alg, config, pool)
            seq = run_scan(m, alg, ScanConfig(direction=direction))
            assert (par.verdict, par.witness, par.iterations) == (
                seq.verdict, seq.witness, seq.iterations)


def test_fast_mode_same_verdict(pool):
    config = ScanConfig(workers=4, mode="fast", segment_size=500)
    for m in (100003, 100001, 95477, 99999):
        for alg in Algorithm:
            par = parallel_scan(m, alg, config, pool)
            seq = run_scan(m, alg)
            assert par.verdict is seq.verdict
            if par.witness is not None:
                assert par.witness.is_valid(m)


def test_parallel_scan_own_pool():
    out = parallel_scan(93, "quadratic", ScanConfig(workers=2))
    assert out.witness == run_scan(93, "quadratic").witness


def test_verify_workers_identical():
    one = verify_range(3, 999, 1).render()
    two = verify_range(3, 999, 2).render()
    assert one == two and " 0 disagreements" in one
