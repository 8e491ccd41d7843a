"""Acceptance criteria, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line straight to the terminal (also without ``-s``), then lets the assertion
decide the pytest outcome.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from darboux.cholesky import generalized_cholesky, symmetrize
from darboux.errors import RationalTermination, ZeroDenominator
from darboux.gjm import jacobi_from_moments, schur_pfraction
from darboux.moments import MeasureSpec, moments_from_jacobi, moments_from_measure, shift_for_christoffel
from darboux.numeric import matmul
from darboux.orthopoly import MonicJacobi, charpoly_oracle, gjm_polys
from darboux.pade import (
    boundedness_diagnostic,
    chebyshev_u_stieltjes,
    chebyshev_u_weight,
    diagonal_pade,
    modified_pade,
    pade_order_check,
    quadrature_stieltjes,
)
from darboux.transforms import christoffel, geronimus, inverse_christoffel, inverse_geronimus, lu_jacobi

from conftest import chebyshev_u, period_two, random_fraction, random_gjm, random_jacobi, transpose

F = Fraction


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def _run(number, label, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            timed_ok = limit is None or dt < limit
            status = "PASS" if ok and timed_ok else "FAIL"
            budget = f" (budget {limit:g} s)" if limit is not None else ""
            with capsys.disabled():
                print(f"\n{status} criterion {number}: {label} [{dt:.3f} s{budget}]")
        assert timed_ok, f"criterion {number} took {dt:.3f} s, budget {limit} s"
    return _run


def test_criterion_01_period_two_factors(criterion):
    with criterion(1, "2-periodic LU factors u, l exact for k <= 20", limit=1.0):
        f = lu_jacobi(period_two(), 20)
        u = [e.u0 for e in f.payload]
        l = [e.l for e in f.payload]
        for k in range(10):
            assert u[2 * k] == k + 1
            assert u[2 * k + 1] == F(-1, k + 1)
            assert l[2 * k] == F(1, k + 1)
            assert l[2 * k + 1] == -(k + 1)
        assert f.kseq == (1,) * 20


def test_criterion_02_period_two_christoffel(criterion):
    with criterion(2, "Christoffel transform of the 2-periodic matrix, leading 3x3", limit=1.0):
        G = christoffel(period_two(), 4)
        assert G.matrix(3) == [[2, 1, 0], [-1, -2, 1], [0, -2, F(5, 2)]]


def test_criterion_03_symmetric_measures_give_2x2_blocks(criterion):
    with criterion(3, "b = 0 gives k_j = 2; c = 1/4 blocks B = [[0,1],[1/2,0]], C = [[0,0],[1/16,0]]"):
        rng = random.Random(3)
        for _ in range(10):
            c = [random_fraction(rng, 0, 2) or F(1, 3) for _ in range(29)]
            G = christoffel(MonicJacobi([F(0)] * 30, c), 6)
            assert G.kseq == (2,) * 6
        G = christoffel(chebyshev_u(), 6)
        assert G.kseq == (2,) * 6
        M = G.matrix(6)
        for j in range(6):
            n = 2 * j
            assert [row[n:n + 2] for row in M[n:n + 2]] == [[0, 1], [F(1, 2), 0]]
            if j < 5:
                assert [row[n:n + 2] for row in M[n + 2:n + 4]] == [[0, 0], [F(1, 16), 0]]
                assert [row[n + 2:n + 4] for row in M[n:n + 2]] == [[0, 0], [1, 0]]


def test_criterion_04_roundtrips(criterion):
    with criterion(4, ">= 100 random rational J, both roundtrips exact", limit=30.0):
        rng = random.Random(20261016)
        done_c = done_g = skipped = 0
        attempts = 0
        while (done_c < 100 or done_g < 100) and attempts < 1000:
            attempts += 1
            J = random_jacobi(rng, 22)
            d = rng.randint(1, 8)
            try:
                C = christoffel(J, d)
                back = inverse_christoffel(C, F(1), d)
            except ZeroDenominator:
                skipped += 1
            else:
                assert back.rows == C.offsets()[d] and back == J.truncate(back.rows)
                done_c += 1
            t = random_fraction(rng, -2, 2) or F(1, 2)
            try:
                G = geronimus(J, t, d + 1)
                back = inverse_geronimus(G, d)
            except ZeroDenominator:
                skipped += 1
            else:
                assert back.rows == G.offsets()[d] and back == J.truncate(back.rows)
                done_g += 1
        assert done_c >= 100 and done_g >= 100


def test_criterion_05_charpoly_identity(criterion):
    with criterion(5, "GJM polynomials equal characteristic polynomials, j <= 6"):
        rng = random.Random(5)
        for _ in range(30):
            G = random_gjm(rng, 6)
            pp = gjm_polys(G, 6)
            for j in range(1, 7):
                P, Q = charpoly_oracle(G, j)
                assert pp.P[j] == P and pp.Q[j] == Q


def test_criterion_06_contact_order(criterion):
    with criterion(6, "diagonal >= 2 n_j, modified >= 2 n_j - 1 terms, exact, j <= 8"):
        rng = random.Random(6)
        cases = [period_two(), chebyshev_u()] + [random_jacobi(rng, 20) for _ in range(4)]
        for J in cases:
            s = moments_from_jacobi(J, 36)
            for j in range(1, 9):
                f = diagonal_pade(s, j)
                assert pade_order_check(f, s) >= 2 * f.meta["n_j"]
                g = modified_pade(J, F(2, 7), j)
                assert pade_order_check(g, s) >= 2 * j - 1
        # 2x2 blocks
        s = shift_for_christoffel(moments_from_jacobi(chebyshev_u(), 40))
        for j in range(1, 9):
            f = diagonal_pade(s, j)
            assert f.meta["n_j"] == 2 * j
            assert pade_order_check(f, s) >= 2 * f.meta["n_j"]


def test_criterion_07_chebyshev_convergence(criterion):
    with criterion(7, "Chebyshev [j/j] at 2: error < 1e-6 at j = 8, strictly decreasing", limit=1.0):
        exact = -4 + 2 * np.sqrt(3.0)
        assert abs(chebyshev_u_stieltjes(2.0) - exact) <= 1e-15
        assert abs(quadrature_stieltjes(chebyshev_u_weight, -1.0, 1.0, 2.0) - exact) <= 1e-10
        s = moments_from_measure(MeasureSpec(named="chebyshevU"), 20)
        errs = [abs(float(diagonal_pade(s, j)(F(2))) - exact) for j in range(1, 9)]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 1e-6


def test_criterion_08_unboundedness_detection(criterion):
    with criterion(8, "kind C ratio k+1 at index 2k+1; max |pole| > 10 by size 40", limit=5.0):
        rep = boundedness_diagnostic(period_two(), "C", 20, with_poles=False)
        for k in range(10):
            assert rep.rows[2 * k].j == 2 * k + 1
            assert rep.rows[2 * k].ratio == k + 1
        rep = boundedness_diagnostic(period_two(42).to_backend("float"), "C", 40)
        assert rep.rows[-1].n_j == 40
        assert rep.max_pole_radius > 10


def test_criterion_09_generalized_cholesky(criterion):
    with criterion(9, "L Lambda L^T = J_s exact on the 2-periodic matrix, <= 1e-10 on c = 1/4"):
        Js, psi = symmetrize(period_two())
        assert set(psi) == {1}
        fac = generalized_cholesky(Js, 20)
        L, Lam = fac.dense()
        n = len(L)
        assert matmul(matmul(L, Lam), transpose(L)) == Js.matrix(n)
        for J in (chebyshev_u(), chebyshev_u().to_backend("float")):
            Js, _ = symmetrize(J)
            fac = generalized_cholesky(Js, 10)
            L, Lam = fac.dense()
            n = len(L)
            R = np.array(matmul(matmul(L, Lam), transpose(L)), dtype=float)
            M = np.array(Js.matrix(n), dtype=float)
            assert np.abs(R - M).max() <= 1e-10 * np.abs(M).max()


def test_criterion_10_cross_oracle(criterion):
    with criterion(10, "christoffel blocks = Schur blocks of shifted moments, depth 5"):
        J = chebyshev_u()
        s = moments_from_jacobi(J, 30)
        G, rec = schur_pfraction(shift_for_christoffel(s), 5)
        C = christoffel(J, 5)
        assert C.head(5) == G.head(5) and C.scale == rec.scale
        rng = random.Random(10)
        for _ in range(20):
            ts = rng.sample([F(i, 4) for i in range(-8, 9) if i != 0], 5)
            ws = [F(rng.randint(1, 9)) for _ in range(5)]
            m = MeasureSpec(atoms=tuple((t, w / sum(ws)) for t, w in zip(ts, ws)))
            s = moments_from_measure(m, 30)
            J = jacobi_from_moments(s, 8)
            assert J.rows == 5 and J.terminal
            # five atoms fill five rows; with a 2x2 block only four blocks exist
            try:
                G, rec = schur_pfraction(shift_for_christoffel(s), 5)
            except RationalTermination as exc:
                G = exc.partial
            d = G.depth
            assert d == 5 or (d == 4 and 2 in G.kseq)
            C = christoffel(J, d)
            assert C == G
