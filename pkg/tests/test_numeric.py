from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux.errors import AllZeroPrefix, DegenerateDenominator
from darboux.numeric import (
    Backend,
    Poly,
    RationalFn,
    Series,
    as_scalar,
    bareiss_det,
    charpoly,
    det,
    format_scalar,
    is_zero,
    series_reciprocal,
    tau_zero,
)

F = Fraction


def test_scalar_parsing():
    assert as_scalar("1/3") == F(1, 3)
    assert as_scalar(0.1) == F(1, 10)
    assert as_scalar("1/4", Backend.FLOAT) == 0.25
    assert format_scalar(F(-1, 2)) == "-1/2"
    assert format_scalar(0.5) == 0.5


def test_float_zero_is_relative(monkeypatch):
    assert is_zero(1e-12)
    assert not is_zero(1e-12, scale=1e-6)
    assert is_zero(F(0)) and not is_zero(F(1, 10**30))
    monkeypatch.setenv("DARBOUX_TAU_ZERO", "1e-3")
    assert tau_zero() == 1e-3
    assert is_zero(1e-4)


def test_poly_arithmetic():
    x = Poly.X()
    p = (x - 1) * (x + 2)
    assert p.coeffs == (F(-2), F(1), F(1))
    assert p(F(1)) == 0
    q, r = p.divmod(x - 1)
    assert q == x + 2 and r.is_zero()
    assert p.gcd((x - 1) * (x - 3)) == x - 1
    assert (p - p).is_zero() and (p - p).degree == -1


def test_reciprocal_of_one_over_lambda():
    poly, rest = series_reciprocal(Series.from_terms([F(1)]))
    assert poly == Poly((F(0), F(-1)))
    assert rest.terms == ()


def test_reciprocal_of_semicircle_expansion():
    # F = -1/l - 1/(4 l^3) - 1/(8 l^5) - ...
    s = [F(1), F(0), F(1, 4), F(0), F(1, 8), F(0), F(5, 64)]
    poly, rest = series_reciprocal(Series.from_moments(s))
    assert poly == Poly.X()
    # precision: 7 moments, valuation 1 -> 5 known terms of the remainder
    assert rest.prec == 6
    assert rest.terms == (F(-1, 4), 0, F(-1, 16), 0, F(-1, 32))


def test_reciprocal_all_zero():
    with pytest.raises(AllZeroPrefix):
        Series.from_moments([F(0), F(0)]).reciprocal()


def test_series_product_precision():
    a = Series.from_terms([F(1), F(2), F(3)])  # O(x^4)
    b = Series.from_terms([F(0), F(1)])  # x^2 + O(x^3)
    p = a * b
    assert p.prec == min(4 + 2, 3 + 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=9, max_size=9))
def test_bareiss_matches_lapack(vals):
    m = [vals[0:3], vals[3:6], vals[6:9]]
    assert abs(float(bareiss_det(m)) - np.linalg.det(np.array(m, dtype=float))) < 1e-9


def test_charpoly_matches_numpy():
    m = [[F(2), F(1), F(0)], [F(-1), F(-2), F(1)], [F(0), F(-2), F(5, 2)]]
    p = charpoly(m)
    assert np.allclose([float(c) for c in reversed(p.coeffs)], np.poly(np.array(m, dtype=float)))


def test_det_dispatch():
    assert det([[F(1), F(2)], [F(3), F(4)]]) == F(-2)
    assert isinstance(det([[1.0, 2.0], [3.0, 4.0]]), float)


def test_rational_expand():
    f = RationalFn(Poly((F(-1),)), Poly((F(0), F(1))))  # -1/l
    assert f.expand(3) == (F(-1), 0, 0)
    g = RationalFn(Poly((F(0), F(-1))), Poly((F(-1, 4), F(0), F(1))))  # -l/(l^2 - 1/4)
    assert g.expand(5) == (F(-1), 0, F(-1, 4), 0, F(-1, 16))
    with pytest.raises(DegenerateDenominator):
        RationalFn(Poly((F(1),)), Poly(()))
