"""Block LU/UL factorizations and the Darboux transforms built on them.

Four factorizations are provided:

``lu_jacobi``   J = L U       (U has 1x1 / 2x2 blocks; swapping gives the
                               Christoffel transform, a GJM)
``ul_gjm``      G = U L       (same factor shapes; swapping gives back a Jacobi
                               matrix, the inverse Christoffel transform)
``ul_jacobi``   J = U L       (the other factor shapes; swapping gives the
                               Geronimus transform, a GJM)
``lu_gjm``      G = L U       (swapping gives the inverse Geronimus transform)

Factor shapes, per block j of size k_j (``n_j`` is the first row of block j):

* "upper-block" shapes (``lu_jacobi``, ``ul_gjm``): the unit lower factor has a
  single entry ``l_{j+1}`` at ``(n_{j+1}, n_j)``; the upper factor has
  ``U_j = u0`` or ``[[0, 1], [u0, u1]]`` on the diagonal and a 1 at
  ``(n_{j+1} - 1, n_{j+1})``.
* "lower-block" shapes (``ul_jacobi``, ``lu_gjm``): the lower factor has
  ``E_j = 1`` or ``[[1, 0], [e, 1]]`` on the diagonal and ``l_{j+1}`` at
  ``(n_{j+2} - 1, n_{j+1} - 1)``; the upper factor has ``U_j = u`` or
  ``[[0, 1], [u, 0]]`` and the same unit couplings.  ``e`` is stored as ``u1``.

Payload entry j stores ``(u0, u1, l)`` where ``l`` is ``l_{j+1}``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import GapExceedsTwo, InsufficientDepth, NonPositiveC, ShapeMismatch, ZeroDenominator, ZeroParameter
from .gjm import GJM, GJMBlock
from .numeric import as_scalar, backend_of, is_exact, is_zero, sign, tau_zero, zeros
from .orthopoly import MonicJacobi


class FactorKind(str, enum.Enum):
    LU_JACOBI = "lu_jacobi"
    UL_JACOBI = "ul_jacobi"
    LU_GJM = "lu_gjm"
    UL_GJM = "ul_gjm"


class Order(str, enum.Enum):
    AS_FACTORED = "as_factored"
    SWAPPED = "swapped"


@dataclass(frozen=True)
class FactorEntry:
    u0: object
    u1: object = None
    l: object = None


@dataclass(frozen=True)
class BlockFactors:
    """Factor data for ``depth`` blocks.

    ``eps0`` and ``scale`` describe the GJM side of the factorization (the
    input for ``*_gjm`` kinds, the transform output for ``*_jacobi`` kinds).
    ``k_next`` is the size of block ``depth`` when known.
    """

    kind: FactorKind
    kseq: tuple
    payload: tuple
    param: object = None
    eps0: int = 1
    scale: object = Fraction(1)
    k_next: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FactorKind(self.kind))
        object.__setattr__(self, "kseq", tuple(self.kseq))
        object.__setattr__(self, "payload", tuple(self.payload))
        if len(self.kseq) != len(self.payload):
            raise ShapeMismatch("kseq and payload lengths differ")
        for j, (k, e) in enumerate(zip(self.kseq, self.payload)):
            if k not in (1, 2) or (k == 2) != (e.u1 is not None):
                raise ShapeMismatch(f"entry {j} does not match block size {k}", index=j)

    @property
    def depth(self):
        return len(self.kseq)

    def offsets(self):
        out = [0]
        for k in self.kseq:
            out.append(out[-1] + k)
        return out

    @property
    def upper_block_shapes(self):
        return self.kind in (FactorKind.LU_JACOBI, FactorKind.UL_GJM)


# ------------------------------------------------------------------ helpers


def _nonzero(val, terms, tau):
    """Zero test for a value produced by a recurrence from ``terms``."""
    if is_exact(val):
        return val != 0
    scale = max((abs(t) for t in terms), default=0.0)
    return not is_zero(val, scale if scale else 1.0, tau)


class _RecurrenceAtZero:
    """Lazy values ``y_n`` of ``y_{n+1} = -b_n y_n - c_{n-1} y_{n-1}`` (``c_{-1} = 1``)."""

    def __init__(self, J, y_minus1, y0, tau):
        self.J, self.tau = J, tau
        self.vals = {-1: y_minus1, 0: y0}
        self.terms = {-1: (y_minus1,), 0: (y0,)}

    def __getitem__(self, n):
        J = self.J
        while n not in self.vals:
            m = max(self.vals)
            if m >= J.rows:
                raise InsufficientDepth(f"need at least {m + 1} rows", index=m + 1)
            cprev = J.c[m - 1] if m > 0 else 1
            t1 = -J.b[m] * self.vals[m]
            t2 = -cprev * self.vals[m - 1]
            self.vals[m + 1] = t1 + t2
            self.terms[m + 1] = (t1, t2)
        return self.vals[n]

    def nonzero(self, n):
        return _nonzero(self[n], self.terms[n], self.tau)


def _c(J, i):
    if i == len(J.c) and J.terminal:
        return J.b[0] * 0
    if i >= len(J.c):
        raise InsufficientDepth(f"need c[{i}], so at least {i + 2} rows", index=i + 2)
    return J.c[i]


def _b(J, i):
    if i >= J.rows:
        raise InsufficientDepth(f"need b[{i}]", index=i + 1)
    return J.b[i]


# ---------------------------------------------------------- factorizations


def lu_jacobi(J: MonicJacobi, depth: int, tau=None) -> BlockFactors:
    """Block LU factorization ``J = L U`` with the blocks of the Christoffel GJM.

    Block sizes follow the zeros of ``P_n(0)``: ``n`` starts a block iff
    ``P_n(0) != 0``.  Then ``u0_j = -P_{n_{j+1}}(0) / P_{n_j}(0)``,
    ``u1_j = b_{n_j + 1}`` and ``l_{j+1} = c_{n_{j+1}-1}`` divided by ``u0_j``
    when ``k_j = 1``.  Needs ``n_depth + 1`` rows.
    """
    tau = tau_zero(tau)
    one = J.b[0] * 0 + 1
    P = _RecurrenceAtZero(J, one * 0, one, tau)
    n = 0
    kseq, payload = [], []
    for j in range(depth):
        if P.nonzero(n + 1):
            k = 1
        elif P.nonzero(n + 2):
            k = 2
        else:
            raise GapExceedsTwo(f"P_{n + 1}(0) and P_{n + 2}(0) both vanish", index=n + 1)
        u0 = -P[n + k] / P[n]
        u1 = _b(J, n + 1) if k == 2 else None
        cc = _c(J, n + k - 1)
        l = cc / u0 if k == 1 else cc
        kseq.append(k)
        payload.append(FactorEntry(u0, u1, l))
        n += k
    e0 = payload[0].u0 if payload else one
    return BlockFactors(FactorKind.LU_JACOBI, kseq, payload, None, sign(e0) or 1, abs(e0))


def ul_gjm(G: GJM, s_minus1, depth: int, tau=None) -> BlockFactors:
    """Block UL factorization of a GJM, the inverse of the Christoffel step.

    ``s_minus1`` is the mass of the original measure (the moment of order -1
    of the measure described by ``G``).  The first factor entry is
    ``u0_0 = eps_0 * scale / s_minus1``; the remaining ones follow from
    ``l_{j+1} = -H_{j+1}(0) / H_j(0)`` with ``H_j = P_j + eps_0 u0_0 Q_j``
    and ``u0_{j+1} = c_j / l_{j+1}``.
    """
    tau = tau_zero(tau)
    if depth > G.depth:
        raise InsufficientDepth(f"GJM has {G.depth} blocks", index=depth)
    if is_exact(s_minus1) and s_minus1 == 0 or (not is_exact(s_minus1) and s_minus1 == 0.0):
        raise ZeroParameter("s_minus1 must be nonzero")
    eps0 = G.eps0
    u0 = eps0 * G.scale / s_minus1
    # H_j(0) by the block recurrence at lambda = 0
    H_prev, H = -eps0 * u0, u0 * 0 + 1
    cprev = eps0
    kseq, payload = [], []
    for j in range(depth):
        blk = G.blocks[j]
        t1, t2 = blk.p0 * H, -cprev * H_prev
        H_next = t1 + t2
        if not _nonzero(H, (H,), tau):
            raise ZeroDenominator(f"vanishing denominator at block {j}", index=j)
        l = -H_next / H
        u1 = -blk.p1 if blk.k == 2 else None
        kseq.append(blk.k)
        payload.append(FactorEntry(u0, u1, l))
        if j + 1 < depth:
            if not _nonzero(H_next, (t1, t2), tau):
                raise ZeroDenominator(f"vanishing denominator at block {j + 1}", index=j + 1)
            u0 = blk.c / l
        H_prev, H = H, H_next
        cprev = blk.c
    return BlockFactors(FactorKind.UL_GJM, kseq, payload, s_minus1, eps0, G.scale)


def ul_jacobi(J: MonicJacobi, s_minus1, depth: int, tau=None) -> BlockFactors:
    """Block UL factorization ``J = U L`` with the blocks of the Geronimus GJM.

    With ``H_n = Q_n - s_minus1 P_n``, ``n`` starts a block iff
    ``H_{n-1}(0) != 0``.  ``l_j = -H_{n_{j+1}-1}(0) / H_{n_j - 1}(0)``;
    ``u_0 = -1/s_minus1`` (or ``c_0`` when ``s_minus1 = 0``), and for later
    blocks ``u_j = c_{n_j - 1} / l_j`` (size 1) or ``c_{n_j}`` (size 2).
    Needs ``n_depth + 1`` or ``n_depth + 2`` rows.
    """
    tau = tau_zero(tau)
    one = J.b[0] * 0 + 1
    s = s_minus1 * one
    H = _RecurrenceAtZero(J, -one, -s, tau)
    starts = [0]

    def next_start(n):
        if H.nonzero(n):
            return n + 1
        if H.nonzero(n + 1):
            return n + 2
        raise GapExceedsTwo(f"H_{n}(0) and H_{n + 1}(0) both vanish", index=n + 1)

    while len(starts) < depth + 2:
        starts.append(next_start(starts[-1]))
    kseq = [starts[j + 1] - starts[j] for j in range(depth + 1)]
    ls = [None] + [-H[starts[j + 1] - 1] / H[starts[j] - 1] for j in range(1, depth + 1)]
    payload = []
    for j in range(depth):
        n, k = starts[j], kseq[j]
        if k == 2:
            u = _c(J, n)
            e = _b(J, n)
        elif j == 0:
            u = -1 / s
            e = None
        else:
            u = _c(J, n - 1) / ls[j]
            e = None
        payload.append(FactorEntry(u, e, ls[j + 1]))
    if kseq[0] == 1:
        eps0, scale = sign(payload[0].u0), abs(s)
    else:
        eps0, scale = 1, one
    return BlockFactors(FactorKind.UL_JACOBI, kseq[:depth], payload, s_minus1, eps0, scale, kseq[depth])


def lu_gjm(G: GJM, depth: int, tau=None) -> BlockFactors:
    """Block LU factorization of a GJM, the inverse of the Geronimus step.

    ``u_j = -P_{j+1}(0) / P_j(0)``, ``l_{j+1} = c_j / u_j`` and ``e_j = -p1_j``.
    """
    tau = tau_zero(tau)
    if depth > G.depth:
        raise InsufficientDepth(f"GJM has {G.depth} blocks", index=depth)
    eps0 = G.eps0
    zero = G.blocks[0].p0 * 0
    P_prev, P = zero, zero + 1
    cprev = eps0
    kseq, payload = [], []
    for j in range(depth):
        blk = G.blocks[j]
        if not _nonzero(P, (P,), tau):
            raise ZeroDenominator(f"vanishing denominator at block {j}", index=j)
        t1, t2 = blk.p0 * P, -cprev * P_prev
        P_next = t1 + t2
        u = -P_next / P
        e = -blk.p1 if blk.k == 2 else None
        l = None
        if blk.c is not None:
            if not _nonzero(P_next, (t1, t2), tau):
                raise ZeroDenominator(f"vanishing denominator at block {j + 1}", index=j + 1)
            l = blk.c / u
        kseq.append(blk.k)
        payload.append(FactorEntry(u, e, l))
        P_prev, P = P, P_next
        cprev = blk.c
    k_next = G.blocks[depth].k if G.depth > depth else None
    return BlockFactors(FactorKind.LU_GJM, kseq, payload, None, eps0, G.scale, k_next)


# ------------------------------------------------------------------ products


def _jacobi_from_upper_shapes(F: BlockFactors) -> MonicJacobi:
    # L U with the "upper-block" shapes
    offs = F.offsets()
    N = offs[-1]
    b, c = [None] * N, [None] * max(N - 1, 0)
    pl = F.payload
    for j, (k, e) in enumerate(zip(F.kseq, pl)):
        n = offs[j]
        add = pl[j - 1].l if j > 0 and F.kseq[j - 1] == 1 else e.u0 * 0
        if k == 1:
            b[n] = e.u0 + add
        else:
            b[n] = add
            c[n] = e.u0
            b[n + 1] = e.u1
        if j > 0:
            c[n - 1] = pl[j - 1].l * (pl[j - 1].u0 if F.kseq[j - 1] == 1 else 1)
    return _make_jacobi(b, c)


def _gjm_from_upper_shapes(F: BlockFactors) -> GJM:
    # U L with the "upper-block" shapes
    blocks = []
    eps = F.eps0
    d = F.depth
    for j, (k, e) in enumerate(zip(F.kseq, F.payload)):
        if e.l is None:
            raise InsufficientDepth(f"l[{j + 1}] unknown", index=j + 1)
        p0 = -(e.u0 + e.l)
        p1 = -e.u1 if k == 2 else None
        c = F.payload[j + 1].u0 * e.l if j + 1 < d else None
        blocks.append(GJMBlock(k, p0, p1, c, eps))
        if c is not None:
            eps = eps * sign(c)
    return GJM(tuple(blocks), F.scale)


def _jacobi_from_lower_shapes(F: BlockFactors) -> MonicJacobi:
    # U L with the "lower-block" shapes
    offs = F.offsets()
    d = F.depth
    last_known = F.k_next is not None and F.payload[-1].l is not None if d else True
    N = offs[-1] if last_known else offs[-1] - 1
    b, c = [None] * offs[-1], [None] * max(offs[-1] - 1, 0)
    pl = F.payload
    for j, (k, e) in enumerate(zip(F.kseq, pl)):
        n = offs[j]
        knext = F.kseq[j + 1] if j + 1 < d else F.k_next
        if knext is None or e.l is None:
            add = None
        else:
            add = e.l if knext == 1 else e.u0 * 0
        if k == 1:
            b[n] = None if add is None else e.u0 + add
        else:
            b[n] = e.u1
            c[n] = e.u0
            b[n + 1] = add
        if j + 1 < d:
            c[offs[j + 1] - 1] = e.l * (pl[j + 1].u0 if F.kseq[j + 1] == 1 else 1)
    return _make_jacobi(b[:N], c[: max(N - 1, 0)])


def _gjm_from_lower_shapes(F: BlockFactors) -> GJM:
    # L U with the "lower-block" shapes
    blocks = []
    eps = F.eps0
    for j, (k, e) in enumerate(zip(F.kseq, F.payload)):
        lj = F.payload[j - 1].l if j > 0 else e.u0 * 0
        p0 = -(e.u0 + lj)
        p1 = -e.u1 if k == 2 else None
        c = e.l * e.u0 if e.l is not None else None
        blocks.append(GJMBlock(k, p0, p1, c, eps))
        if c is not None:
            eps = eps * sign(c)
    return GJM(tuple(blocks), F.scale)


def _make_jacobi(b, c):
    for i, x in enumerate(c):
        if x is not None and not x > 0:
            raise NonPositiveC(f"product has c[{i}]={x}", index=i)
    return MonicJacobi(tuple(b), tuple(c))


_PRODUCTS = {
    (FactorKind.LU_JACOBI, Order.AS_FACTORED): _jacobi_from_upper_shapes,
    (FactorKind.LU_JACOBI, Order.SWAPPED): _gjm_from_upper_shapes,
    (FactorKind.UL_GJM, Order.AS_FACTORED): _gjm_from_upper_shapes,
    (FactorKind.UL_GJM, Order.SWAPPED): _jacobi_from_upper_shapes,
    (FactorKind.UL_JACOBI, Order.AS_FACTORED): _jacobi_from_lower_shapes,
    (FactorKind.UL_JACOBI, Order.SWAPPED): _gjm_from_lower_shapes,
    (FactorKind.LU_GJM, Order.AS_FACTORED): _gjm_from_lower_shapes,
    (FactorKind.LU_GJM, Order.SWAPPED): _jacobi_from_lower_shapes,
}


def block_product(F: BlockFactors, order=Order.AS_FACTORED):
    """Multiply the two factors back, in the original or the swapped order.

    Returns a :class:`MonicJacobi` or a :class:`GJM` depending on the kind and
    order.  Only the part fixed by the available factor data is returned:
    a GJM whose last coupling may be ``None``, or a Jacobi truncation whose
    last row is dropped when it depends on an unknown block size.
    """
    return _PRODUCTS[(FactorKind(F.kind), Order(order))](F)


def factor_matrices(F: BlockFactors):
    """Dense factors ``(X, Y)`` with ``X Y`` the as-factored product.

    Both are square of size ``n_depth + 2``; entries not fixed by the data
    are zero, so only the leading part of the product is meaningful.
    """
    offs = F.offsets()
    M = offs[-1] + 2
    zero = F.payload[0].u0 * 0 if F.payload else Fraction(0)
    one = zero + 1
    lower = zeros(M, M, zero)
    upper = zeros(M, M, zero)
    for i in range(M):
        lower[i][i] = one
    d = F.depth
    for j, (k, e) in enumerate(zip(F.kseq, F.payload)):
        n = offs[j]
        nn = offs[j + 1]
        upper[nn - 1][nn] = one
        if F.upper_block_shapes:
            if k == 1:
                upper[n][n] = e.u0
            else:
                upper[n][n + 1] = one
                upper[n + 1][n] = e.u0
                upper[n + 1][n + 1] = e.u1
            if e.l is not None:
                lower[nn][n] = e.l
        else:
            if k == 1:
                upper[n][n] = e.u0
            else:
                upper[n][n + 1] = one
                upper[n + 1][n] = e.u0
                lower[n + 1][n] = e.u1
            knext = F.kseq[j + 1] if j + 1 < d else F.k_next
            if e.l is not None and knext is not None:
                lower[nn + knext - 1][nn - 1] = e.l
    lu = F.kind in (FactorKind.LU_JACOBI, FactorKind.LU_GJM)
    return (lower, upper) if lu else (upper, lower)


# ---------------------------------------------------------------- transforms


def christoffel(J: MonicJacobi, depth: int, tau=None) -> GJM:
    """GJM of the measure ``t dsigma(t)`` (normalized), from ``J = L U`` swapped."""
    return block_product(lu_jacobi(J, depth, tau), Order.SWAPPED)


def inverse_christoffel(G: GJM, s0, depth: int, tau=None) -> MonicJacobi:
    """Jacobi matrix of the measure whose Christoffel transform is ``G``; ``s0`` is its mass."""
    return block_product(ul_gjm(G, s0, depth, tau), Order.SWAPPED)


def geronimus(J: MonicJacobi, s_minus1, depth: int, tau=None) -> GJM:
    """GJM of ``(F(lambda) + s_minus1) / lambda`` from ``J = U L`` swapped.

    Its moment sequence is ``(-s_minus1, s_0, s_1, ...)``.
    """
    return block_product(ul_jacobi(J, s_minus1, depth, tau), Order.SWAPPED)


def inverse_geronimus(G: GJM, depth: int, tau=None) -> MonicJacobi:
    """Jacobi matrix recovered from a Geronimus GJM via ``G = L U`` swapped.

    Pass a GJM with more than ``depth`` blocks to get all ``n_depth`` rows;
    otherwise the last row is dropped.
    """
    return block_product(lu_gjm(G, depth, tau), Order.SWAPPED)
