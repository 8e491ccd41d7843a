import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from darboux.errors import GapExceedsTwo, InsufficientDepth, InsufficientMoments, RationalTermination, ShapeMismatch
from darboux.gjm import GJM, GJMBlock, gjm_moments, gram, m_function, schur_pfraction
from darboux.moments import MeasureSpec, moments_from_jacobi, moments_from_measure, shift_for_christoffel
from darboux.numeric import matmul
from darboux.orthopoly import charpoly_oracle, gjm_polys
from darboux.pade import pade_order_check

from conftest import chebyshev_u, gjms, period_two, random_gjm, transpose

F = Fraction


def semicircle(count):
    return moments_from_measure(MeasureSpec(named="chebyshevU"), count)


def test_semicircle_is_classical():
    G, rec = schur_pfraction(semicircle(16), 4)
    assert rec.normalized
    assert G.kseq == (1, 1, 1, 1)
    assert all(b.p0 == 0 and b.c == F(1, 4) and b.eps == 1 for b in G.blocks)
    assert G.to_jacobi() == chebyshev_u(4)


def test_odd_semicircle_moments_give_two_by_two_blocks():
    G, rec = schur_pfraction(shift_for_christoffel(semicircle(16)), 3)
    assert rec.scale == F(1, 4)
    assert G.kseq == (2, 2, 2)
    for b in G.blocks:
        assert (b.p0, b.p1, b.c, b.eps) == (F(-1, 2), 0, F(1, 16), 1)


def test_block_matrix_layout():
    G, _ = schur_pfraction(shift_for_christoffel(semicircle(16)), 2)
    M = G.matrix()
    assert M == [
        [0, 1, 0, 0],
        [F(1, 2), 0, 1, 0],
        [0, 0, 0, 1],
        [F(1, 16), 0, F(1, 2), 0],
    ]


def test_atoms_terminate():
    m = MeasureSpec(atoms=((F(-1, 2), F(1, 3)), (F(1), F(2, 3))))
    s = moments_from_measure(m, 12)
    G, _ = schur_pfraction(s, 2)
    assert G.depth == 2
    with pytest.raises(RationalTermination) as info:
        schur_pfraction(s, 3)
    assert info.value.partial.depth == 2
    # with two atoms the approximant of size two is the function itself
    f = m_function(G.head(2), 2)
    assert pade_order_check(f, s) == len(s)


def test_single_atom():
    G, _ = schur_pfraction([F(1)] * 8, 1)
    assert G.blocks[0].p0 == -1 and G.blocks[0].c is None


def test_gap_exceeding_two():
    with pytest.raises(GapExceedsTwo):
        schur_pfraction([F(0), F(0), F(1), F(0), F(0), F(1)], 1)


def test_needs_moments():
    with pytest.raises(InsufficientMoments):
        schur_pfraction(semicircle(4), 4)


def test_sign_consistency_enforced():
    with pytest.raises(ShapeMismatch):
        GJM((GJMBlock(1, F(0), None, F(-1), 1), GJMBlock(1, F(0), None, None, 1)))
    with pytest.raises(ShapeMismatch):
        GJM((GJMBlock(1, F(0), None, None, 1), GJMBlock(1, F(0), None, None, 1)))
    with pytest.raises(ShapeMismatch):
        GJMBlock(2, F(0))


def test_charpoly_identity_frozen():
    # sympy values, see tests/oracles/make_frozen.py
    G, _ = schur_pfraction(shift_for_christoffel(moments_from_jacobi(period_two(), 20)), 4)
    pp = gjm_polys(G, 3)
    assert pp.P[3].coeffs == (F(7, 2), -1, F(-5, 2), 1)
    assert pp.Q[3].coeffs == (-3, F(-1, 2), 1)
    H, _ = schur_pfraction(shift_for_christoffel(semicircle(16)), 3)
    pp = gjm_polys(H, 2)
    assert pp.P[2].coeffs == (F(3, 16), 0, -1, 0, 1)
    assert pp.Q[2].coeffs == (F(-1, 2), 0, 1)


@settings(max_examples=40, deadline=None)
@given(gjms(max_depth=6))
def test_charpoly_identity_random(G):
    pp = gjm_polys(G, G.depth)
    for j in range(G.depth + 1):
        P, Q = charpoly_oracle(G, j)
        assert pp.P[j] == P
        assert pp.Q[j] == Q


@settings(max_examples=40, deadline=None)
@given(gjms(min_depth=2, max_depth=5))
def test_weighted_gram_symmetry(G):
    """W J^T = J W with W = diag(b_0^2 ... b_{j-1}^2 G_j)."""
    M = G.matrix()
    g = gram(G).dense()
    offs = G.offsets()
    W = [row[:] for row in g]
    w = F(1)
    for j, b in enumerate(G.blocks):
        for r in range(offs[j], offs[j + 1]):
            for c in range(offs[j], offs[j + 1]):
                W[r][c] = g[r][c] * w
        if b.c is not None:
            w *= abs(b.c)
    assert matmul(W, transpose(M)) == matmul(M, W)


@settings(max_examples=40, deadline=None)
@given(gjms(min_depth=3, max_depth=5))
def test_schur_inverts_gjm_moments(G):
    """Moments of a GJM fed back through the Schur step give the same blocks."""
    offs = G.offsets()
    count = 2 * offs[G.depth - 1] + G.blocks[G.depth - 1].k - 1
    s = gjm_moments(G, count, j=G.depth - 1) if G.depth > 1 else None
    depth = G.depth - 1
    H, rec = schur_pfraction(s, depth)
    assert rec.scale == 1
    assert H.head(depth) == G.head(depth)


def test_gjm_moments_classical_and_stable():
    J = period_two()
    G = GJM.from_jacobi(J.truncate(10))
    s = moments_from_jacobi(J, 12)
    assert gjm_moments(G, 12) == s
    # the 6-row truncation is the first to reproduce s_0..s_11
    with pytest.raises(InsufficientDepth):
        gjm_moments(G, 12, j=5)
    assert gjm_moments(G, 12, j=6) == gjm_moments(G, 12, j=9)


def test_m_function_contact_order():
    s = shift_for_christoffel(semicircle(20))
    G, rec = schur_pfraction(s, 4)
    for j in range(1, 5):
        f = m_function(G.head(j), j)
        n = G.offsets()[j]
        assert pade_order_check(f, s.scaled(1 / rec.scale)) >= 2 * n


def test_random_gjm_helper_deterministic():
    a = random_gjm(random.Random(1), 4)
    b = random_gjm(random.Random(1), 4)
    assert a == b
