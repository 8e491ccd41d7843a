"""Monic Jacobi matrices and the polynomials attached to them.

A monic Jacobi matrix has diagonal ``b_j``, ones on the superdiagonal and
``c_j > 0`` on the subdiagonal.  Its polynomials of the first and second
kind satisfy

    lambda P_j = P_{j+1} + b_j P_j + c_{j-1} P_{j-1}

with ``P_{-1} = 0, P_0 = 1`` and ``Q_{-1} = -1, Q_0 = 0`` (so ``Q_1 = 1``).
The same three-term recurrence, with block polynomials in place of
``lambda - b_j``, defines the polynomials of a generalized Jacobi matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .errors import InsufficientDepth, InsufficientMoments, NonPositiveC, ShapeMismatch, SingularHankel
from .moments import hankel_det
from .numeric import Backend, Poly, as_scalar, backend_of, charpoly, det, is_zero

if TYPE_CHECKING:
    from .gjm import GJM


@dataclass(frozen=True)
class MonicJacobi:
    """Leading ``rows x rows`` block of a monic Jacobi matrix.

    ``terminal=True`` marks the whole (finite) matrix of a measure with
    ``rows`` atoms: the coupling after the last row is zero.
    """

    b: tuple
    c: tuple
    terminal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.c) != max(len(self.b) - 1, 0):
            raise ShapeMismatch(f"len(c)={len(self.c)} but len(b)={len(self.b)}")
        for i, x in enumerate(self.c):
            if not x > 0:
                raise NonPositiveC(f"c[{i}]={x}", index=i)

    @classmethod
    def periodic(cls, b_pattern, c_pattern, rows):
        b = tuple(b_pattern[i % len(b_pattern)] for i in range(rows))
        c = tuple(c_pattern[i % len(c_pattern)] for i in range(rows - 1))
        return cls(b, c)

    @property
    def rows(self) -> int:
        return len(self.b)

    @property
    def backend(self) -> Backend:
        return backend_of(self.b + self.c)

    def truncate(self, n: int) -> "MonicJacobi":
        if n > self.rows:
            raise InsufficientDepth(f"requested {n} rows of {self.rows}", index=n)
        return MonicJacobi(self.b[:n], self.c[: max(n - 1, 0)], self.terminal and n == self.rows)

    def to_backend(self, backend) -> "MonicJacobi":
        return MonicJacobi(tuple(as_scalar(x, backend) for x in self.b), tuple(as_scalar(x, backend) for x in self.c),
                           self.terminal)

    def matrix(self, n: int | None = None):
        n = self.rows if n is None else n
        if n > self.rows:
            raise InsufficientDepth(index=n)
        zero = (self.b[0] * 0) if self.b else Fraction(0)
        m = [[zero] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = self.b[i]
            if i + 1 < n:
                m[i][i + 1] = zero + 1
                m[i + 1][i] = self.c[i]
        return m


@dataclass(frozen=True)
class PolyPair:
    """``P[j]`` and ``Q[j]`` for ``j = 0..m``."""

    P: tuple
    Q: tuple


GJMPolyPair = PolyPair


def classical_polys(J: MonicJacobi, m: int) -> PolyPair:
    """Polynomials of the first and second kind ``P_0..P_m``, ``Q_0..Q_m``."""
    if m > J.rows:
        raise InsufficientDepth(f"need {m} rows", index=m)
    one = (J.b[0] * 0 + 1) if J.b else Fraction(1)
    x = Poly((one * 0, one))
    P = [Poly((one,))]
    Q = [Poly(())]
    P_prev, Q_prev = Poly(()), Poly((-one,))
    for j in range(m):
        cprev = J.c[j - 1] if j > 0 else one
        Pn = (x - J.b[j]) * P[j] - P_prev * cprev
        Qn = (x - J.b[j]) * Q[j] - Q_prev * cprev
        P_prev, Q_prev = P[j], Q[j]
        P.append(Pn)
        Q.append(Qn)
    return PolyPair(tuple(P), tuple(Q))


def values_at(J: MonicJacobi, lam, m: int, p_prev, p0, c_minus1=1):
    """Run the three-term recurrence numerically at one point.

    Returns ``y_0..y_m`` starting from ``y_{-1} = p_prev, y_0 = p0``.
    Used for ``P_n(0)``, ``Q_n(0)`` and their combinations.
    """
    if m > J.rows:
        raise InsufficientDepth(f"need {m} rows", index=m)
    ys = [p0]
    prev = p_prev
    for j in range(m):
        cprev = J.c[j - 1] if j > 0 else c_minus1
        nxt = (lam - J.b[j]) * ys[j] - cprev * prev
        prev = ys[j]
        ys.append(nxt)
    return ys


def gjm_polys(G: "GJM", m: int) -> PolyPair:
    """Block polynomials of a generalized Jacobi matrix.

    ``c_{j-1} y_{j-1} - p_j(lambda) y_j + y_{j+1} = 0`` with ``c_{-1} = eps_0``,
    ``P_0 = 1, P_{-1} = 0`` and ``Q_0 = 0, Q_{-1} = -1``.
    """
    if m > len(G.blocks):
        raise InsufficientDepth(f"need {m} blocks", index=m)
    one = G.blocks[0].p0 * 0 + 1 if G.blocks else Fraction(1)
    P = [Poly((one,))]
    Q = [Poly(())]
    P_prev, Q_prev = Poly(()), Poly((-one,))
    for j in range(m):
        blk = G.blocks[j]
        cprev = G.blocks[j - 1].c if j > 0 else one * G.blocks[0].eps
        if cprev is None:
            raise InsufficientDepth(f"coupling c[{j - 1}] unknown", index=j - 1)
        pj = blk.poly()
        Pn = pj * P[j] - P_prev * cprev
        Qn = pj * Q[j] - Q_prev * cprev
        P_prev, Q_prev = P[j], Q[j]
        P.append(Pn)
        Q.append(Qn)
    return PolyPair(tuple(P), tuple(Q))


def det_formula_P(s: Sequence, n: int) -> Poly:
    """Monic denominator of degree n from the moments (bordered Hankel determinant).

    Requires ``det(s_{i+k})_{0}^{n-1} != 0`` and ``len(s) >= 2n``.
    """
    if len(s) < 2 * n:
        raise InsufficientMoments(f"need {2 * n} moments", index=n)
    d = hankel_det(s, n)
    if is_zero(d, 1.0):
        raise SingularHankel(f"Hankel determinant of order {n} vanishes", index=n)
    rows = [[s[i + k] for k in range(n + 1)] for i in range(n)]
    coeffs = []
    for k in range(n + 1):
        minor = [[r[col] for col in range(n + 1) if col != k] for r in rows]
        cof = det(minor) if n else as_scalar(1, backend_of(s[:1]))
        coeffs.append((-1) ** (n + k) * cof / d)
    return Poly(tuple(coeffs))


def det_formula_at_zero(s: Sequence, n: int):
    """``(P(0), Q(0))`` of the degree-n denominator/numerator pair from moments alone.

    ``P(0) = (-1)^n det(s_{i+k+1}) / d`` and
    ``Q(0) = (-1)^n det([[0, v], [v^T, H1]]) / d`` with ``v = (s_0..s_{n-1})``
    and ``H1 = (s_{i+k+1})``, where ``d = det(s_{i+k})``.
    """
    if len(s) < 2 * n:
        raise InsufficientMoments(f"need {2 * n} moments", index=n)
    d = hankel_det(s, n)
    if is_zero(d, 1.0):
        raise SingularHankel(index=n)
    sign = (-1) ** n
    p0 = sign * hankel_det(s, n, shift=1) / d
    zero = s[0] * 0
    border = [[zero] + [s[k] for k in range(n)]]
    for i in range(n):
        border.append([s[i]] + [s[i + k + 1] for k in range(n)])
    q0 = sign * det(border) / d
    return p0, q0


def charpoly_oracle(X, j: int):
    """``(det(lambda - X_[0,j-1]), eps_0 det(lambda - X_[1,j-1]))`` from dense truncations.

    ``X`` is a :class:`MonicJacobi` (blocks of size one) or a GJM.
    """
    if isinstance(X, MonicJacobi):
        n0, n1, nj, eps0 = 0, 1, j, 1
        if j > X.rows:
            raise InsufficientDepth(index=j)
        M = X.matrix(j)
    else:
        if j > len(X.blocks):
            raise InsufficientDepth(index=j)
        offs = X.offsets()
        n1, nj, eps0 = offs[1] if len(offs) > 1 else 0, offs[j], X.eps0
        M = X.matrix(j)
    if j == 0:
        return Poly((Fraction(1),)), Poly(())
    P = charpoly(M)
    sub = [row[n1:nj] for row in M[n1:nj]]
    Q = charpoly(sub) * eps0
    return P, Q
