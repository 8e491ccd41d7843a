"""Moment sequences, Hankel determinants and normal indices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import FloatAmbiguous, InsufficientDepth, InsufficientMoments, ShapeMismatch
from .numeric import Backend, as_scalar, backend_of, bareiss_det, is_exact, tau_zero

NAMED_MEASURES = ("chebyshevU", "arcsine")


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``s_0, s_1, ...`` with an optional extra value ``s_minus1``.

    ``s_minus1`` is the free parameter of a Geronimus transform: the moment
    of order -1 of the transformed measure.
    """

    s: tuple
    s_minus1: object = None

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        return self.s[i]

    def __iter__(self):
        return iter(self.s)

    @property
    def backend(self) -> Backend:
        return backend_of(self.s)

    def to_backend(self, backend):
        sm = None if self.s_minus1 is None else as_scalar(self.s_minus1, backend)
        return MomentSequence(tuple(as_scalar(a, backend) for a in self.s), sm)

    def scaled(self, a):
        return MomentSequence(tuple(x * a for x in self.s), self.s_minus1)


@dataclass(frozen=True)
class MeasureSpec:
    """A finite combination of point masses plus an optional named measure.

    ``atoms`` is a tuple of ``(t, a)`` pairs (location, mass).  ``named`` is
    ``"chebyshevU"`` (semicircle on [-1, 1]) or ``"arcsine"`` (on [-1, 1]),
    both normalized to unit mass.  ``region`` lists real intervals that cover
    the support; it is metadata used to reject evaluation points.
    """

    atoms: tuple = ()
    named: str | None = None
    region: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((t, a) for t, a in self.atoms))
        if self.named is not None and self.named not in NAMED_MEASURES:
            raise ShapeMismatch(f"unknown named measure {self.named!r}")

    @property
    def backend(self):
        return backend_of([x for pair in self.atoms for x in pair])

    def support_region(self):
        if self.region is not None:
            return tuple(self.region)
        out = []
        if self.named is not None:
            out.append((-1.0, 1.0))
        out.extend((float(t), float(t)) for t, _ in self.atoms)
        return tuple(out)

    def stieltjes(self, lam):
        """``F(lambda) = integral of dsigma(t)/(t - lambda)``, closed form.

        Branches are chosen so that ``F(lambda) ~ -1/lambda`` at infinity.
        """
        lam = complex(lam)
        val = 0j
        for t, a in self.atoms:
            val += complex(a) / (complex(t) - lam)
        if self.named is not None:
            root = _sqrt_minus_one(lam)
            if self.named == "chebyshevU":
                val += -2 * lam + 2 * root
            else:
                val += -1 / root
        if lam.imag == 0:
            return val.real
        return val


def _sqrt_minus_one(lam):
    # sqrt(lam^2 - 1) with the branch cut on [-1, 1], ~ lam at infinity
    return np.sqrt(lam - 1) * np.sqrt(lam + 1)


def named_moments(name, count, backend=Backend.EXACT):
    out = []
    for k in range(count):
        if k % 2:
            out.append(Fraction(0))
            continue
        n = k // 2
        if name == "chebyshevU":
            out.append(Fraction(math.comb(2 * n, n), (n + 1) * 4**n))
        elif name == "arcsine":
            out.append(Fraction(math.comb(2 * n, n), 4**n))
        else:
            raise ShapeMismatch(f"unknown named measure {name!r}")
    return tuple(as_scalar(x, backend) for x in out)


def moments_from_measure(m: MeasureSpec, count: int) -> MomentSequence:
    """First ``count`` moments of a measure."""
    backend = m.backend
    s = [as_scalar(0, backend)] * count
    if m.named is not None:
        s = list(named_moments(m.named, count, backend))
    for t, a in m.atoms:
        p = a
        for k in range(count):
            s[k] += p
            p *= t
    return MomentSequence(tuple(s))


def moments_from_jacobi(J, count: int) -> MomentSequence:
    """``s_k = (J^k)_{00}`` for k < count.

    A truncation with n rows reproduces ``s_k`` exactly for ``k <= 2n - 1``.
    """
    need = (count + 1) // 2
    if count == 0:
        return MomentSequence(())
    if J.rows < need:
        raise InsufficientDepth(f"need {need} rows for {count} moments", index=J.rows)
    n = max(need, 1)
    b, c = J.b, J.c
    one = b[0] * 0 + 1
    v = [one] + [one * 0] * (n - 1)
    s = []
    for _ in range(count):
        s.append(v[0])
        w = []
        for i in range(n):
            acc = b[i] * v[i]
            if i > 0:
                acc += c[i - 1] * v[i - 1]
            if i + 1 < n:
                acc += v[i + 1]
            w.append(acc)
        v = w
    return MomentSequence(tuple(s))


def hankel_matrix(s: Sequence, n: int, shift: int = 0):
    return [[s[i + k + shift] for k in range(n)] for i in range(n)]


def hankel_det(s: Sequence, n: int, shift: int = 0):
    """``det(s_{i+k+shift})_{i,k=0}^{n-1}``; equals 1 when n = 0."""
    if n == 0:
        return as_scalar(1, backend_of(s[:1]))
    if len(s) < 2 * n - 1 + shift:
        raise InsufficientMoments(f"need {2 * n - 1 + shift} moments", index=n)
    h = hankel_matrix(s, n, shift)
    if all(is_exact(x) for row in h for x in row):
        return bareiss_det([[Fraction(x) for x in row] for row in h])
    return float(np.linalg.det(np.array(h, dtype=float)))


@dataclass(frozen=True)
class NormalIndexReport:
    indices: tuple
    gaps: tuple
    hankel_dets: tuple

    @property
    def flagged(self) -> bool:
        return any(g > 2 for g in self.gaps)


def normal_indices(s: Sequence, nmax: int, tau=None) -> NormalIndexReport:
    """Indices ``n in 1..nmax`` with a nonvanishing Hankel determinant.

    On floats a determinant is classified as zero only if it is exactly 0.0;
    values that are tiny relative to the product of row norms raise
    :class:`FloatAmbiguous`.
    """
    s = tuple(s)
    if len(s) < 2 * nmax - 1:
        raise InsufficientMoments(f"need {2 * nmax - 1} moments for nmax={nmax}", index=len(s))
    tau = tau_zero(tau)
    indices, dets = [], []
    for n in range(1, nmax + 1):
        d = hankel_det(s, n)
        dets.append((n, d))
        if is_exact(d):
            nonzero = d != 0
        else:
            h = np.array(hankel_matrix(s, n), dtype=float)
            scale = float(np.prod(np.linalg.norm(h, axis=1)))
            if d == 0.0 or scale == 0.0:
                nonzero = False
            elif abs(d) <= tau * scale:
                raise FloatAmbiguous(f"Hankel determinant of order {n} is near zero", index=n)
            else:
                nonzero = True
        if nonzero:
            indices.append(n)
    prev = 0
    gaps = []
    for n in indices:
        gaps.append(n - prev)
        prev = n
    return NormalIndexReport(tuple(indices), tuple(gaps), tuple(dets))


def shift_for_christoffel(s: MomentSequence) -> MomentSequence:
    """Moments of ``t dsigma(t)``, i.e. ``(s_1, s_2, ...)``."""
    return MomentSequence(tuple(s.s[1:]))


def unshift(s: MomentSequence, c) -> MomentSequence:
    """Prepend ``c`` as the new ``s_0``."""
    return MomentSequence((c,) + tuple(s.s))
