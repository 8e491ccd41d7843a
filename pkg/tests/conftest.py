import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from darboux import GJM, GJMBlock, MonicJacobi


def transpose(m):
    return [list(r) for r in zip(*m)]


def period_two(rows=40):
    return MonicJacobi.periodic([Fraction(1), Fraction(0)], [Fraction(1)], rows)


def chebyshev_u(rows=40):
    return MonicJacobi([Fraction(0)] * rows, [Fraction(1, 4)] * (rows - 1))


def random_fraction(rng, lo, hi, den=8):
    d = rng.randint(1, den)
    return Fraction(rng.randint(int(lo * d), int(hi * d)), d)


def random_jacobi(rng, rows):
    """b in [-1, 1], c in (0, 1], small denominators so zeros of P_n(0) occur."""
    b = [random_fraction(rng, -1, 1, 4) for _ in range(rows)]
    c = []
    for _ in range(rows - 1):
        x = random_fraction(rng, 0, 1, 4)
        c.append(x if x > 0 else Fraction(1, 2))
    return MonicJacobi(b, c)


def random_gjm(rng, depth):
    eps = [rng.choice([1, -1]) for _ in range(depth)]
    blocks = []
    for j in range(depth):
        k = rng.choice([1, 2])
        p0 = random_fraction(rng, -2, 2)
        p1 = random_fraction(rng, -2, 2) if k == 2 else None
        c = None
        if j + 1 < depth:
            mag = random_fraction(rng, 0, 2)
            mag = mag if mag > 0 else Fraction(1, 3)
            c = eps[j] * eps[j + 1] * mag
        blocks.append(GJMBlock(k, p0, p1, c, eps[j]))
    return GJM(tuple(blocks))


small_fractions = st.fractions(min_value=-2, max_value=2, max_denominator=6)
positive_fractions = st.fractions(min_value=Fraction(1, 6), max_value=2, max_denominator=6)


@st.composite
def jacobi_matrices(draw, min_rows=4, max_rows=12):
    n = draw(st.integers(min_rows, max_rows))
    b = draw(st.lists(small_fractions, min_size=n, max_size=n))
    c = draw(st.lists(positive_fractions, min_size=n - 1, max_size=n - 1))
    return MonicJacobi(b, c)


@st.composite
def gjms(draw, min_depth=1, max_depth=5):
    depth = draw(st.integers(min_depth, max_depth))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_gjm(random.Random(seed), depth)


@pytest.fixture
def rng():
    return random.Random(20261016)
