"""Generalized Jacobi matrices with 1x1 and 2x2 diagonal blocks.

Block ``j`` of size ``k_j`` carries a monic polynomial ``p_j`` (``lambda + p0``
or ``lambda^2 + p1 lambda + p0``) and its companion block ``B_j``.  Consecutive
blocks are coupled by ``D_j`` (a single 1 in the last row, first column) above
the diagonal and ``C_j`` (a single ``c_j`` in the last row, first column)
below it.  Signs ``eps_j`` satisfy ``c_j = eps_j eps_{j+1} b_j^2``.

The matrix is built from a moment sequence by the step

    -1/F(lambda) = eps_0 p_0(lambda) + b_0^2 F_1(lambda)

applied repeatedly to the normalized function ``F``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import (
    AllZeroPrefix,
    GapExceedsTwo,
    InsufficientDepth,
    InsufficientMoments,
    RationalTermination,
    ShapeMismatch,
)
from .moments import MomentSequence
from .numeric import Poly, RationalFn, Series, as_scalar, backend_of, is_exact, is_zero, series_reciprocal, sign
from .orthopoly import MonicJacobi, det_formula_P, gjm_polys


@dataclass(frozen=True)
class GJMBlock:
    k: int
    p0: object
    p1: object = None
    c: object = None  # coupling to the next block; None if not determined
    eps: int = 1

    def __post_init__(self):
        if self.k not in (1, 2):
            raise ShapeMismatch(f"block size {self.k}")
        if (self.k == 2) != (self.p1 is not None):
            raise ShapeMismatch("p1 is given exactly for 2x2 blocks")
        if self.eps not in (1, -1):
            raise ShapeMismatch(f"eps={self.eps}")

    @property
    def b2(self):
        return None if self.c is None else abs(self.c)

    def poly(self) -> Poly:
        one = self.p0 * 0 + 1
        if self.k == 1:
            return Poly((self.p0, one))
        return Poly((self.p0, self.p1, one))

    def diag_block(self):
        one = self.p0 * 0 + 1
        if self.k == 1:
            return [[-self.p0]]
        return [[one * 0, one], [-self.p0, -self.p1]]


@dataclass(frozen=True)
class GJM:
    """Leading blocks of a generalized Jacobi matrix.

    ``scale`` records the normalization: the matrix describes ``F / scale``.
    Only the last block may have ``c = None``.
    """

    blocks: tuple
    scale: object = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for j, blk in enumerate(self.blocks[:-1]):
            if blk.c is None:
                raise ShapeMismatch(f"coupling c[{j}] missing before the last block", index=j)
            if is_exact(blk.c) and blk.c == 0:
                raise ShapeMismatch(f"c[{j}] vanishes", index=j)
            if sign(blk.c) != blk.eps * self.blocks[j + 1].eps:
                raise ShapeMismatch(f"sign of c[{j}] disagrees with eps", index=j)

    @classmethod
    def from_jacobi(cls, J: MonicJacobi) -> "GJM":
        """The classical case: every block is 1x1 and every sign is +1."""
        blocks = []
        for j in range(J.rows):
            c = J.c[j] if j < len(J.c) else None
            blocks.append(GJMBlock(1, -J.b[j], None, c, 1))
        return cls(tuple(blocks))

    def to_jacobi(self) -> MonicJacobi:
        if any(b.k != 1 or b.eps != 1 for b in self.blocks):
            raise ShapeMismatch("not a classical Jacobi matrix")
        b = tuple(-blk.p0 for blk in self.blocks)
        c = tuple(blk.c for blk in self.blocks[:-1])
        return MonicJacobi(b, c)

    @property
    def depth(self) -> int:
        return len(self.blocks)

    @property
    def kseq(self) -> tuple:
        return tuple(b.k for b in self.blocks)

    @property
    def eps0(self) -> int:
        return self.blocks[0].eps if self.blocks else 1

    @property
    def backend(self):
        vals = []
        for b in self.blocks:
            vals += [b.p0, b.p1, b.c]
        return backend_of([v for v in vals if v is not None])

    def offsets(self):
        """``n_0 = 0, n_1, ..., n_depth`` (row offsets of the blocks)."""
        out = [0]
        for b in self.blocks:
            out.append(out[-1] + b.k)
        return out

    def rows(self, nblocks=None) -> int:
        return self.offsets()[self.depth if nblocks is None else nblocks]

    def head(self, n: int) -> "GJM":
        """First n blocks, with the last coupling dropped."""
        if n > self.depth:
            raise InsufficientDepth(index=n)
        blocks = list(self.blocks[:n])
        if blocks:
            blocks[-1] = replace(blocks[-1], c=None)
        return GJM(tuple(blocks), self.scale)

    def matrix(self, nblocks: int | None = None):
        """Dense truncation ``J_[0, nblocks-1]`` as nested lists."""
        nb = self.depth if nblocks is None else nblocks
        if nb > self.depth:
            raise InsufficientDepth(index=nb)
        offs = self.offsets()
        n = offs[nb]
        zero = self.blocks[0].p0 * 0 if self.blocks else Fraction(0)
        m = [[zero] * n for _ in range(n)]
        for j in range(nb):
            blk = self.blocks[j]
            a = offs[j]
            for r, row in enumerate(blk.diag_block()):
                for q, v in enumerate(row):
                    m[a + r][a + q] = v
            if j + 1 < nb:
                nxt = self.blocks[j + 1]
                m[a + blk.k - 1][offs[j + 1]] = zero + 1
                m[offs[j + 1] + nxt.k - 1][a] = blk.c
        return m

    def to_backend(self, backend):
        def cv(x):
            return None if x is None else as_scalar(x, backend)

        blocks = tuple(GJMBlock(b.k, cv(b.p0), cv(b.p1), cv(b.c), b.eps) for b in self.blocks)
        return GJM(blocks, as_scalar(self.scale, backend))


@dataclass(frozen=True)
class NormalizationRecord:
    scale: object

    @property
    def normalized(self) -> bool:
        return self.scale == 1


def _moment_view(series: Series, count):
    """First ``count`` moments (all known ones if None) from a series in 1/lambda."""
    top = series.prec if series.prec is not None else series.low + len(series.coeffs)
    if count is not None:
        top = min(top, count + 1)
    return [-series.coeff(e) for e in range(1, top)]


def _leading_index(m, tau):
    """Size of the next block (1 or 2) from the first moments ``m``.

    Raises RationalTermination if every known moment vanishes and
    GapExceedsTwo if a later moment is nonzero.
    """
    # moments grow geometrically, so floats are judged against the first few only
    scale = max((abs(x) for x in m[:3]), default=0)
    zero = [x == 0 if is_exact(x) else is_zero(x, scale, tau) for x in m]
    for k in (1, 2):
        if len(m) >= k and not zero[k - 1]:
            return k
    if len(m) < 2:
        return None
    if all(zero):
        raise RationalTermination("remaining function vanishes identically")
    raise GapExceedsTwo("two consecutive leading moments vanish")


def schur_pfraction(s, depth: int, tau=None):
    """Blocks of the generalized Jacobi matrix of a moment sequence.

    Parameters
    ----------
    s : MomentSequence or sequence of scalars
        Moments ``s_0, s_1, ...``.  The first nonzero one fixes the scale.
    depth : int
        Number of blocks to produce.

    Returns
    -------
    (GJM, NormalizationRecord)
        The coupling of the final block is filled in when the moments
        determine it, otherwise it is ``None``.

    Each step consumes ``2 k_j`` moments.
    """
    m = list(s.s if isinstance(s, MomentSequence) else s)
    if not m:
        raise InsufficientMoments("no moments", index=0)
    k0 = _leading_index(m, tau)
    if k0 is None:
        raise InsufficientMoments(index=0)
    scale = abs(m[k0 - 1])
    F = Series.from_moments([x / scale for x in m])
    blocks = []
    for j in range(depth):
        try:
            k = _leading_index(_moment_view(F, None), tau)
        except RationalTermination as exc:
            raise RationalTermination(exc.args[0], index=j, partial=_partial(blocks, scale)) from None
        if k is None:
            raise InsufficientMoments(f"block {j} needs more moments", index=j)
        mom = _moment_view(F, 2 * k)
        if len(mom) < 2 * k:
            raise InsufficientMoments(f"block {j} needs {2 * k} moments", index=j)
        p = det_formula_P(mom, k)
        eps = sign(mom[k - 1])
        try:
            poly, rest = series_reciprocal(F, tau)
        except AllZeroPrefix:
            raise InsufficientMoments(index=j) from None
        _check_poly_part(poly, p, eps, j)
        p1 = p[1] if k == 2 else None
        blocks.append([k, p[0], p1, None, eps])
        rm = _moment_view(rest, None)
        try:
            k_next = _leading_index(rm, tau) if rm else None
        except RationalTermination:
            if j == depth - 1:
                break
            raise RationalTermination("continued fraction terminates", index=j + 1, partial=_partial(blocks, scale)) from None
        except GapExceedsTwo:
            if j == depth - 1:
                break
            raise GapExceedsTwo(index=j + 1) from None
        if k_next is None:
            if j == depth - 1:
                break
            raise InsufficientMoments(f"block {j + 1} needs more moments", index=j + 1)
        lead = rm[k_next - 1]
        b2 = abs(lead)
        eps_next = sign(lead)
        blocks[-1][3] = eps * eps_next * b2
        F = rest.scale(1 / b2)
    return _partial(blocks, scale), NormalizationRecord(scale)


def jacobi_from_moments(s, rows: int, tau=None) -> MonicJacobi:
    """Jacobi matrix of a positive measure from its moments, ``rows`` rows.

    If the continued fraction stops first (a measure with finitely many
    atoms) the whole finite matrix is returned with ``terminal=True``.
    """
    try:
        G, _ = schur_pfraction(s, rows, tau)
        return G.to_jacobi()
    except RationalTermination as exc:
        if exc.partial is None or exc.partial.depth == 0:
            raise
        J = exc.partial.to_jacobi()
        return MonicJacobi(J.b, J.c, terminal=True)


def _partial(blocks, scale):
    return GJM(tuple(GJMBlock(*b) for b in blocks), scale)


def _check_poly_part(poly, p, eps, j):
    expected = p * eps
    exact = all(is_exact(a) for a in poly.coeffs + expected.coeffs)
    if exact and poly != expected:
        raise ArithmeticError(f"polynomial part mismatch at block {j}")


@dataclass(frozen=True)
class GramMatrix:
    """Block diagonal matrix ``diag(G_0, G_1, ...)`` with ``G_j = eps_j`` or
    ``eps_j [[0, 1], [1, -p1]]``."""

    blocks: tuple

    def dense(self):
        n = sum(len(b) for b in self.blocks)
        zero = self.blocks[0][0][0] * 0 if self.blocks else Fraction(0)
        m = [[zero] * n for _ in range(n)]
        a = 0
        for b in self.blocks:
            for r, row in enumerate(b):
                for q, v in enumerate(row):
                    m[a + r][a + q] = v
            a += len(b)
        return m


def gram(G: GJM, depth: int | None = None) -> GramMatrix:
    depth = G.depth if depth is None else depth
    if depth > G.depth:
        raise InsufficientDepth(index=depth)
    out = []
    for blk in G.blocks[:depth]:
        one = blk.p0 * 0 + 1
        e = blk.eps * one
        if blk.k == 1:
            out.append(((e,),))
        else:
            out.append(((e * 0, e), (e, -e * blk.p1)))
    return GramMatrix(tuple(out))


def m_function(G: GJM, j: int) -> RationalFn:
    """``-Q_j / P_j`` for the first j blocks."""
    pp = gjm_polys(G, j)
    offs = G.offsets()
    return RationalFn(-pp.Q[j], pp.P[j], {"j": j, "n_j": offs[j], "kind": "diagonal"})


def gjm_moments(G: GJM, kmax: int, j: int | None = None, rescale: bool = False) -> MomentSequence:
    """Moments ``s_k = e_0^T Gram (J^T)^k e_0`` for ``k < kmax``.

    The truncation with j blocks reproduces ``s_k`` for
    ``k <= 2 n_j + k_j - 2``; by default the smallest such j is used.
    With ``rescale`` the moments are multiplied back by ``G.scale``.
    """
    offs = G.offsets()

    def reach(jj):
        kj = G.blocks[jj].k if jj < G.depth else 1
        return 2 * offs[jj] + kj - 2

    if j is None:
        j = next((jj for jj in range(1, G.depth + 1) if reach(jj) >= kmax - 1), None)
        if j is None:
            raise InsufficientDepth(f"{kmax} moments need more blocks", index=G.depth)
    elif j > G.depth or reach(j) < kmax - 1:
        raise InsufficientDepth(index=j)
    M = G.matrix(j)
    g = gram(G, j).dense()
    n = len(M)
    col0 = [g[i][0] for i in range(n)]
    zero = M[0][0] * 0
    v = [zero + 1] + [zero] * (n - 1)
    out = []
    for _ in range(kmax):
        out.append(sum((a * b for a, b in zip(col0, v)), zero))
        # v <- J^T v
        v = [sum((M[r][i] * v[r] for r in range(n)), zero) for i in range(n)]
    if rescale:
        out = [x * G.scale for x in out]
    return MomentSequence(tuple(out))
