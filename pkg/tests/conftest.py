import cmath
import math

import numpy as np
import pytest

from upqsl2.qnum import validate_params

LOCUS_GAP = 1e-3


def random_params(rng, equal=False):
    """Parameters with moduli in [0.5, 2], at least 1e-3 away from pq=1, p^2=1, q^2=1."""
    while True:
        q = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-math.pi, math.pi))
        p = q if equal else cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-math.pi, math.pi))
        if min(abs(p * q - 1), abs(p * p - 1), abs(q * q - 1)) >= LOCUS_GAP:
            return validate_params(p, q)


def random_two_j(rng, radius=6.0):
    r = radius * math.sqrt(rng.uniform(0, 1))
    return cmath.rect(r, rng.uniform(-math.pi, math.pi))


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)
