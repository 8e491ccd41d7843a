import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from darboux.errors import FloatAmbiguous, InsufficientDepth, InsufficientMoments, ShapeMismatch
from darboux.moments import (
    MeasureSpec,
    MomentSequence,
    hankel_det,
    moments_from_jacobi,
    moments_from_measure,
    normal_indices,
    shift_for_christoffel,
    unshift,
)

from conftest import chebyshev_u, jacobi_matrices, period_two

F = Fraction

# sympy matrix powers, see tests/oracles/make_frozen.py
PERIOD_TWO_MOMENTS = [1, 1, 2, 3, 6, 11, 23, 47, 102, 221, 493, 1105]


def test_chebyshev_u_moments_are_scaled_catalan():
    s = moments_from_measure(MeasureSpec(named="chebyshevU"), 16)
    for n in range(8):
        assert s[2 * n] == F(math.comb(2 * n, n), (n + 1) * 4**n)
        assert s[2 * n + 1] == 0


def test_arcsine_moments():
    s = moments_from_measure(MeasureSpec(named="arcsine"), 8)
    assert s.s == (1, 0, F(1, 2), 0, F(3, 8), 0, F(5, 16), 0)


def test_atom_moments():
    m = MeasureSpec(atoms=((F(-1, 2), F(1, 3)), (F(1), F(2, 3))))
    s = moments_from_measure(m, 4)
    assert s.s == (1, F(1, 2), F(3, 4), F(5, 8))


def test_unknown_named_measure():
    with pytest.raises(ShapeMismatch):
        MeasureSpec(named="legendre")


def test_jacobi_moments_period_two():
    s = moments_from_jacobi(period_two(), 12)
    assert list(s) == PERIOD_TWO_MOMENTS


def test_jacobi_moments_need_rows():
    with pytest.raises(InsufficientDepth):
        moments_from_jacobi(period_two(4), 12)


def test_jacobi_and_measure_agree_for_semicircle():
    assert moments_from_jacobi(chebyshev_u(), 20) == moments_from_measure(MeasureSpec(named="chebyshevU"), 20)


def test_normal_indices_examples():
    assert normal_indices([F(1), F(0), F(1, 4), F(0), F(1, 8)], 3).indices == (1, 2, 3)
    # a single atom at 1
    rep = normal_indices([F(1)] * 9, 5)
    assert rep.indices == (1,)
    # odd moments of the semicircle: s' = (0, 1/4, 0, 1/8, ...)
    s = shift_for_christoffel(moments_from_measure(MeasureSpec(named="chebyshevU"), 12))
    rep = normal_indices(s, 5)
    assert rep.indices == (2, 4)
    assert rep.gaps == (2, 2)
    assert not rep.flagged


def test_gap_flag():
    rep = normal_indices([F(0), F(0), F(1), F(0), F(0)], 3)
    assert rep.indices == (3,)
    assert rep.flagged


def test_normal_indices_need_moments():
    with pytest.raises(InsufficientMoments):
        normal_indices([F(1), F(0)], 3)


def test_float_ambiguity():
    s = [1.0, 1.0, 1.0 + 1e-14, 1.0, 1.0]
    with pytest.raises(FloatAmbiguous):
        normal_indices(s, 2)


def test_shift_roundtrip():
    s = MomentSequence((F(1), F(2), F(3)))
    assert unshift(shift_for_christoffel(s), F(1)) == s


@settings(max_examples=25, deadline=None)
@given(jacobi_matrices())
def test_positive_measure_hankel_dets_positive(J):
    s = moments_from_jacobi(J, 2 * J.rows - 1)
    for n in range(1, J.rows + 1):
        d = hankel_det(s, n)
        # det = c_0^(n-1) c_1^(n-2) ... c_{n-2}
        expected = F(1)
        for i in range(n - 1):
            expected *= J.c[i] ** (n - 1 - i)
        assert d == expected
