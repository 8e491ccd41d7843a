"""Scalars, dense polynomials and truncated Laurent series in 1/lambda.

Two arithmetic backends are supported: exact rationals
(:class:`fractions.Fraction`) and IEEE doubles.  The backend of a value is
simply its Python type; helpers below dispatch on that.

Zero tests on floats are relative: ``|x| <= tau * scale`` where ``tau``
defaults to 1e-10 and may be overridden with the ``DARBOUX_TAU_ZERO``
environment variable or an explicit ``tau=`` argument.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import AllZeroPrefix, DegenerateDenominator, InsufficientMoments

Scalar = Union[Fraction, float]

TAU_ZERO_DEFAULT = 1e-10
TAU_ENV = "DARBOUX_TAU_ZERO"


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def tau_zero(tau=None) -> float:
    if tau is not None:
        return float(tau)
    raw = os.environ.get(TAU_ENV)
    return float(raw) if raw else TAU_ZERO_DEFAULT


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def as_scalar(x, backend=Backend.EXACT) -> Scalar:
    """Convert ints, floats, Fractions or ``"p/q"`` strings to a backend scalar."""
    if Backend(backend) is Backend.FLOAT:
        if isinstance(x, str):
            return float(Fraction(x))
        return float(x)
    if isinstance(x, float):
        # shortest repr, so 0.1 becomes 1/10 rather than its binary expansion
        return Fraction(repr(x))
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        return Fraction(repr(float(x)))
    return Fraction(x)


def backend_of(values) -> Backend:
    for v in values:
        if v is not None and not is_exact(v):
            return Backend.FLOAT
    return Backend.EXACT


def convert(values, backend):
    return tuple(None if v is None else as_scalar(v, backend) for v in values)


def is_zero(x, scale=1.0, tau=None) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tau_zero(tau) * float(scale)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def format_scalar(x):
    """JSON-friendly form: ``"p/q"`` strings for exact values, numbers otherwise."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, complex):
        return [float(x.real), float(x.imag)]
    return float(x)


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class Poly:
    """Dense polynomial in lambda, coefficients in ascending order."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def X(cls, one=Fraction(1)):
        return cls((one * 0, one))

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def monomial(cls, k, a=Fraction(1)):
        return cls((a * 0,) * k + (a,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other):
        return other if isinstance(other, Poly) else Poly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(tuple(a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [0] * max(len(rem) - dq, 0)
        lead = other.lead
        for i in range(len(rem) - dq - 1, -1, -1):
            f = rem[i + dq] / lead
            q[i] = f
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= f * b
        return Poly(tuple(q)), Poly(tuple(rem[:dq]))

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def gcd(self, other: "Poly"):
        """Monic gcd; meaningful for exact coefficients."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def deriv(self):
        return Poly(tuple(k * a for k, a in enumerate(self.coeffs) if k))

    def to_float(self):
        return Poly(tuple(float(a) for a in self.coeffs))

    def roots(self):
        """Roots as eigenvalues of the companion matrix (numpy)."""
        if self.degree < 1:
            return np.array([], dtype=complex)
        c = np.array([float(a) for a in self.coeffs], dtype=float)
        return np.roots(c[::-1]).astype(complex)

    def __repr__(self):
        return f"Poly({[format_scalar(a) for a in self.coeffs]})"


def poly_from_roots(roots, one=Fraction(1)):
    p = Poly((one,))
    for r in roots:
        p = p * Poly((-r, one))
    return p


# -------------------------------------------------------------------- series


@dataclass(frozen=True)
class Series:
    """Truncated Laurent series in ``x = 1/lambda``.

    ``coeffs[i]`` is the coefficient of ``x**(low + i)``.  ``prec`` is the
    exponent of the error term, i.e. the series is known modulo
    ``O(x**prec)``; ``None`` means the series is exact (finitely many terms).
    """

    coeffs: tuple
    low: int = 1
    prec: int | None = None

    def __post_init__(self):
        c = list(self.coeffs)
        if self.prec is not None:
            c = c[: max(self.prec - self.low, 0)]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_moments(cls, s: Sequence):
        """Asymptotic expansion ``-sum s_i / lambda**(i+1)`` of a Stieltjes function."""
        return cls(tuple(-a for a in s), 1, len(s) + 1)

    @classmethod
    def from_terms(cls, c: Sequence):
        """``sum c_i / lambda**(i+1)`` known to ``len(c)`` terms."""
        return cls(tuple(c), 1, len(c) + 1)

    @classmethod
    def from_poly(cls, p: Poly):
        if p.is_zero():
            return cls((), 0, None)
        return cls(tuple(reversed(p.coeffs)), -p.degree, None)

    def coeff(self, e):
        if self.prec is not None and e >= self.prec:
            raise InsufficientMoments(f"coefficient of x^{e} unknown", index=e)
        i = e - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def terms(self):
        """Coefficients of ``1/lambda**(i+1)`` for the known ``i >= 0``."""
        top = self.prec if self.prec is not None else self.low + len(self.coeffs)
        return tuple(self.coeff(e) for e in range(1, top))

    def to_moments(self):
        return tuple(-a for a in self.terms)

    def _top(self):
        return self.prec if self.prec is not None else self.low + len(self.coeffs)

    def valuation(self, tau=None):
        """Smallest exponent with a nonzero coefficient, ``None`` if all vanish."""
        # floats are judged against the leading coefficients (later ones may grow fast)
        scale = max((abs(a) for a in self.coeffs[:3]), default=0)
        for i, a in enumerate(self.coeffs):
            if not (a == 0 if is_exact(a) else is_zero(a, scale, tau)):
                return self.low + i
        return None

    def __add__(self, other: "Series"):
        prec = _min_prec(self.prec, other.prec)
        low = min(self.low, other.low)
        top = prec if prec is not None else max(self._top(), other._top())
        return Series(tuple(self.coeff(e) + other.coeff(e) for e in range(low, top)), low, prec)

    def __neg__(self):
        return Series(tuple(-a for a in self.coeffs), self.low, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return Series(tuple(c * a for c in self.coeffs), self.low, self.prec)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        vf = self.valuation()
        vg = other.valuation()
        vf = vf if vf is not None else (self.prec if self.prec is not None else 0)
        vg = vg if vg is not None else (other.prec if other.prec is not None else 0)
        prec = _min_prec(
            None if self.prec is None else self.prec + vg,
            None if other.prec is None else other.prec + vf,
        )
        low = self.low + other.low
        top = prec if prec is not None else self._top() + other._top()
        out = [0] * max(top - low, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k < len(out):
                    out[k] += a * b
        zero = (self.coeffs[:1] or other.coeffs[:1] or (0,))[0] * 0
        return Series(tuple(zero + o for o in out), low, prec)

    __rmul__ = __mul__

    def reciprocal(self, prec=None, tau=None):
        """``1/f``.  An exact series needs an explicit target ``prec``."""
        src = self
        if src.prec is None:
            if prec is None:
                raise ValueError("reciprocal of an exact series needs prec")
        v = src.valuation(tau)
        if v is None:
            raise AllZeroPrefix("all known coefficients vanish")
        p_in = src.prec if src.prec is not None else prec + 2 * v
        if prec is not None:
            p_in = min(p_in, prec + 2 * v)
        count = p_in - v
        a = [src.coeff(v + i) if (src.prec is None or v + i < src.prec) else 0 for i in range(count)]
        b = [1 / a[0]]
        for n in range(1, count):
            acc = a[n] * b[0]
            for k in range(1, n):
                acc += a[k] * b[n - k]
            b.append(-acc / a[0])
        return Series(tuple(b), -v, p_in - 2 * v)

    def split(self):
        """Separate into the polynomial part (in lambda) and the part in O(1/lambda)."""
        top = self._top()
        # coefficients at or beyond the error term are unknown and dropped
        poly = Poly(tuple(self.coeff(-k) if self.prec is None or -k < self.prec else 0
                          for k in range(0, -self.low + 1)))
        rest = Series(tuple(self.coeff(e) for e in range(1, top)), 1, self.prec)
        return poly, rest

    def truncate(self, prec):
        p = prec if self.prec is None else min(prec, self.prec)
        return Series(self.coeffs, self.low, p)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_reciprocal(f: Series, tau=None):
    """Return ``-1/f`` split into a polynomial part and a series in O(1/lambda)."""
    r = -f.reciprocal(tau=tau)
    return r.split()


# ----------------------------------------------------------- rational functions


@dataclass(frozen=True)
class RationalFn:
    """``num(lambda)/den(lambda)`` with free-form metadata (index, kind, tau)."""

    num: Poly
    den: Poly
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.den.is_zero():
            raise DegenerateDenominator("denominator is identically zero")

    def __call__(self, lam):
        d = self.den(lam)
        if d == 0:
            from .errors import PoleCollision

            raise PoleCollision(f"pole at {lam}")
        return self.num(lam) / d

    def expand(self, nterms):
        """Coefficients of ``1/lambda**i`` for i = 1..nterms (proper part only)."""
        d = Series.from_poly(self.den)
        n = Series.from_poly(self.num)
        vn = n.low if n.coeffs else 0
        inv = d.reciprocal(prec=nterms + 1 - vn)
        q = n * inv
        q = q.truncate(nterms + 1)
        return tuple(q.coeff(e) for e in range(1, nterms + 1))

    def reduced(self):
        g = self.num.gcd(self.den)
        if g.degree < 1:
            return self
        return RationalFn(self.num.divmod(g)[0], self.den.divmod(g)[0], dict(self.meta))

    def poles(self):
        return self.den.roots()


# -------------------------------------------------------------- determinants


def det(matrix) -> Scalar:
    """Determinant: fraction-free Bareiss for exact entries, LAPACK for floats."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    flat = [a for row in matrix for a in row]
    if backend_of(flat) is Backend.FLOAT:
        return float(np.linalg.det(np.array(matrix, dtype=float)))
    return bareiss_det([[Fraction(a) for a in row] for row in matrix])


def bareiss_det(m) -> Fraction:
    m = [list(row) for row in m]
    n = len(m)
    sgn = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sgn = -sgn
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sgn * m[n - 1][n - 1]


def charpoly(matrix) -> Poly:
    """``det(lambda I - M)`` for an exact matrix, by interpolation at 0..n."""
    n = len(matrix)
    if n == 0:
        return Poly((Fraction(1),))
    xs = [Fraction(i) for i in range(n + 1)]
    ys = []
    for x in xs:
        a = [[(x if i == j else 0) - Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
        ys.append(bareiss_det(a))
    # Newton divided differences
    coef = list(ys)
    for k in range(1, n + 1):
        for i in range(n, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k])
    p = Poly((coef[n],))
    for k in range(n - 1, -1, -1):
        p = p * Poly((-xs[k], Fraction(1))) + coef[k]
    return p


def matmul(a, b):
    """Plain nested-list product (works for Fractions)."""
    if not a or not b:
        return []
    inner = len(b)
    cols = len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), 0 * a[0][0]) for j in range(cols)] for i in range(len(a))]


def zeros(n, m, zero=Fraction(0)):
    return [[zero for _ in range(m)] for _ in range(n)]
