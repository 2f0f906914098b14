import random
from fractions import Fraction
from pathlib import Path

import pytest

from boolebell.core import AtomDistribution

GOLDEN = Path(__file__).parent / "golden"


def random_distribution(rng: random.Random, n: int, max_weight: int = 12,
                        sparse: bool = True) -> AtomDistribution:
    """Exact random distribution over 2**n atoms, optionally on a random support."""
    size = 1 << n
    support = rng.sample(range(size), rng.randint(1, size)) if sparse else range(size)
    raw = {a: rng.randint(1, max_weight) for a in support}
    total = sum(raw.values())
    return AtomDistribution.from_mapping(n, {a: Fraction(w, total) for a, w in raw.items()})


def random_rational(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def golden_dir():
    return GOLDEN
