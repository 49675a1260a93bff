import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gfmatroids import field_from_order, random_matroid

# Seeded instance corpora shared by the property and acceptance suites.
_Q_CYCLE = (2, 3, 4, 5)


def corpus_instance(i: int):
    """Deterministic random matroid #i: q cycles 2,3,4,5; 6..12 elements; rank 2..5."""
    q = _Q_CYCLE[i % 4]
    n = 6 + (i % 7)
    r = min(2 + (i % 4), n - 1)
    return random_matroid(r, n, field_from_order(q), seed=1000 + i)


@pytest.fixture(scope="session")
def corpus200():
    return [corpus_instance(i) for i in range(200)]


def duality_instance(i: int):
    """Corpus for the duality suite: q in {2,3,4}, at most 10 elements."""
    q = (2, 3, 4)[i % 3]
    n = 5 + (i % 6)
    r = min(2 + (i % 4), n - 1)
    return random_matroid(r, n, field_from_order(q), seed=2000 + i)


@pytest.fixture(scope="session")
def corpus50():
    return [duality_instance(i) for i in range(50)]
