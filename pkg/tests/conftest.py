import numpy as np
import pytest

from analysis.rate_measure import build_measure, from_atoms


@pytest.fixture
def point_mass():
    """δ_2 with n = 100: the symmetric hypercube walk's measure."""
    return build_measure([2.0] * 100)


@pytest.fixture
def two_atoms():
    """Masses 1/2 at rates 1 and 3, with n = 100."""
    return from_atoms(100, [(1.0, 0.5), (3.0, 0.5)])


def random_measures(count: int, seed: int, max_n: int = 40):
    """Measures built from random rate lists; some rates repeat so atoms carry counts > 1."""
    rng = np.random.default_rng(seed)
    measures = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        pool = rng.uniform(0.2, 5.0, size=max(1, n // 2))
        measures.append(build_measure(rng.choice(pool, size=n)))
    return measures
