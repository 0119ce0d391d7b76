import random

import pytest

from porism.fields import PrimeField, RationalField
from porism.projective import Conic


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def F11():
    return PrimeField(11)


@pytest.fixture
def F13():
    return PrimeField(13)


@pytest.fixture
def Q():
    return RationalField()


def random_smooth_conic(field, rng):
    """A uniformly random smooth conic over a finite field."""
    while True:
        coeffs = [field(rng.randrange(field.size)) for _ in range(6)]
        try:
            conic = Conic(field, coeffs)
        except ValueError:
            continue
        if conic.is_smooth():
            return conic


def random_smooth_pair(field, rng):
    outer = random_smooth_conic(field, rng)
    inner = random_smooth_conic(field, rng)
    while inner == outer:
        inner = random_smooth_conic(field, rng)
    return outer, inner
