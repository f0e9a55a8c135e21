import random

import pytest

from grouprank import Mat, NumberFieldSpec


@pytest.fixture
def rng():
    return random.Random(20240817)


def mat(spec, rows):
    return Mat(spec, rows)


def eij(spec, n, i, j, c=1):
    rows = [[spec.one if a == b else spec.zero for b in range(n)] for a in range(n)]
    rows[i][j] = spec.coerce(c)
    return Mat(spec, rows)


def diag(spec, entries):
    n = len(entries)
    return Mat(spec, [[spec.coerce(entries[i]) if i == j else spec.zero
                       for j in range(n)] for i in range(n)])


def random_invertible(spec, n, rng, bound=3):
    while True:
        rows = [[spec.from_int(rng.randint(-bound, bound)) for _ in range(n)]
                for _ in range(n)]
        m = Mat(spec, rows)
        if not spec.is_zero(m.det()):
            return m


def random_unipotent(spec, n, rng, bound=3):
    rows = [[spec.one if i == j else
             (spec.from_int(rng.randint(-bound, bound)) if j > i else spec.zero)
             for j in range(n)] for i in range(n)]
    return Mat(spec, rows)


QRAT = NumberFieldSpec.rationals()
