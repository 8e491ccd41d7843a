"""Generalized Cholesky factorization of symmetrized Jacobi matrices.

With ``psi_0 = 1`` and ``psi_{n+1} = psi_n sqrt(c_n)`` the similarity
``J_s = Psi^{-1} J Psi`` has diagonal ``b`` and off-diagonal ``sqrt(c_n)``.
Conjugating the block LU factorization of ``J`` by ``Psi`` gives
``J_s = L Lambda L^T`` with ``L`` unit lower triangular and ``Lambda`` block
diagonal with symmetric blocks ``lambda0`` or ``[[0, lambda0], [lambda0, lambda1]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientDepth, NonPositiveC, ShapeMismatch
from .numeric import is_exact, zeros
from .orthopoly import MonicJacobi
from .transforms import lu_jacobi


@dataclass(frozen=True)
class SymJacobi:
    diag: tuple
    offdiag: tuple

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(self.diag))
        object.__setattr__(self, "offdiag", tuple(self.offdiag))
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise ShapeMismatch("len(offdiag) must be len(diag) - 1")
        for i, x in enumerate(self.offdiag):
            if not x > 0:
                raise NonPositiveC(index=i)

    @property
    def rows(self):
        return len(self.diag)

    def matrix(self, n=None):
        n = self.rows if n is None else n
        zero = self.diag[0] * 0 if self.diag else Fraction(0)
        m = zeros(n, n, zero)
        for i in range(n):
            m[i][i] = self.diag[i]
            if i + 1 < n:
                m[i][i + 1] = m[i + 1][i] = self.offdiag[i]
        return m

    def to_monic(self) -> MonicJacobi:
        return MonicJacobi(self.diag, tuple(x * x for x in self.offdiag))


def exact_sqrt(x):
    """Square root of a Fraction if it is a perfect square, else ``None``."""
    if not isinstance(x, (Fraction, int)) or x < 0:
        return None
    x = Fraction(x)
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def symmetrize(J: MonicJacobi):
    """``(J_s, psi)``.  Exact when every ``c_n`` is a rational square, float otherwise."""
    roots = [exact_sqrt(c) if is_exact(c) else None for c in J.c]
    if all(r is not None for r in roots):
        diag = J.b
        off = tuple(roots)
    else:
        diag = tuple(float(x) for x in J.b)
        off = tuple(math.sqrt(float(c)) for c in J.c)
    psi = [off[0] * 0 + 1 if off else (diag[0] * 0 + 1 if diag else Fraction(1))]
    for x in off:
        psi.append(psi[-1] * x)
    return SymJacobi(diag, off), tuple(psi)


@dataclass(frozen=True)
class CholeskyFactors:
    """``kseq``, the off-diagonal entries ``lhat[j]`` (that is, the factor entry
    for block j+1) and the symmetric blocks ``(lambda0, lambda1)`` of ``Lambda``."""

    kseq: tuple
    lhat: tuple
    blocks: tuple

    def offsets(self):
        out = [0]
        for k in self.kseq:
            out.append(out[-1] + k)
        return out

    def dense(self):
        """``(L, Lambda)`` on the first ``n_depth`` rows."""
        offs = self.offsets()
        N = offs[-1]
        zero = self.blocks[0][0] * 0
        L = zeros(N, N, zero)
        Lam = zeros(N, N, zero)
        for i in range(N):
            L[i][i] = zero + 1
        for j, (k, (a, b)) in enumerate(zip(self.kseq, self.blocks)):
            n = offs[j]
            if k == 1:
                Lam[n][n] = a
            else:
                Lam[n][n + 1] = Lam[n + 1][n] = a
                Lam[n + 1][n + 1] = b
            if offs[j + 1] < N:
                L[offs[j + 1]][n] = self.lhat[j]
        return L, Lam


def generalized_cholesky(Js: SymJacobi, depth: int, tau=None) -> CholeskyFactors:
    """Factor ``Js = L Lambda L^T`` on the first ``depth`` blocks.

    Needs ``n_depth + 1`` rows, as for the block LU factorization.
    """
    J = Js.to_monic()
    F = lu_jacobi(J, depth, tau)
    offs = F.offsets()
    if offs[-1] >= Js.rows:
        raise InsufficientDepth(index=offs[-1] + 1)
    lhat, blocks = [], []
    for j, (k, e) in enumerate(zip(F.kseq, F.payload)):
        n = offs[j]
        if k == 1:
            blocks.append((e.u0, None))
        else:
            # Psi^{-1} [[0, 1], [u0, u1]] Psi with u0 = c_n and psi ratio sqrt(c_n)
            blocks.append((Js.offdiag[n], e.u1))
        ratio = Js.offdiag[n] if k == 1 else Js.offdiag[n] * Js.offdiag[n + 1]
        lhat.append(e.l / ratio)
    return CholeskyFactors(tuple(F.kseq), tuple(lhat), tuple(blocks))
