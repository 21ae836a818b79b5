import numpy as np
import pytest

from boundkey import FAMILY_DOMAINS, make_family


def random_hermitian(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2


def family_grid(family, points=50):
    lo, hi = FAMILY_DOMAINS[family]
    return np.linspace(lo, hi, points)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def all_family_states(points=10):
    for family in ("Family1", "Family2", "Family3", "Horodecki"):
        for p in family_grid(family, points):
            yield make_family(family, float(p))
