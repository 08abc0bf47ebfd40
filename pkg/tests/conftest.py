import random

import pytest

MERSENNE_61 = (1 << 61) - 1


@pytest.fixture
def rng():
    return random.Random(0x5EED)
