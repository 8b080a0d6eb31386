import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def naive_is_prime(n):
    return n >= 2 and all(n % k for k in range(2, n))


ODD_PRIMES_TO_1000 = [p for p in range(3, 1001, 2) if naive_is_prime(p)]


@pytest.fixture(scope="session")
def golden_traces():
    return json.loads((FIXTURES / "golden_traces.json").read_text())
