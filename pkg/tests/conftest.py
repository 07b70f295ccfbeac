import random

import pytest

from galecubics.fields import QQ, PrimeField, cyclotomic3
from galecubics.linalg import Matrix


@pytest.fixture(params=["rationals", "prime:101", "prime:97"])
def field(request):
    from galecubics.fields import parse_field
    return parse_field(request.param)


@pytest.fixture
def rng():
    return random.Random(1234)


def random_unimodular3(field, rng):
    m = Matrix.identity(field, 3)
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        e = Matrix.identity(field, 3)
        e.data[i][j] = field.random(rng)
        m = m * e
    return m


ALL_FIELDS = [QQ, PrimeField(97), PrimeField(101), cyclotomic3(QQ),
              cyclotomic3(PrimeField(101))]
