import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from primelens import primes


@pytest.fixture(scope="session")
def enc_1e4():
    return primes.sieve(10**4)


@pytest.fixture(scope="session")
def enc_1e6():
    return primes.sieve(10**6)


@pytest.fixture(scope="session")
def enc_1e8():
    # ~100 MB of bits; shared by the mertens/pnt acceptance criteria
    return primes.sieve(10**8)
