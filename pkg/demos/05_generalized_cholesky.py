"""
Generalized Cholesky factorization
==================================

The symmetric form J_s of a Jacobi matrix factors as L Lambda L^T, where
Lambda carries 2x2 blocks exactly where the block LU factorization does.
"""
from fractions import Fraction

from darboux import generalized_cholesky, symmetrize
from darboux.numeric import matmul
from darboux.orthopoly import MonicJacobi

for name, J in (("2-periodic", MonicJacobi.periodic([Fraction(1), Fraction(0)], [Fraction(1)], 12)),
                ("semicircle", MonicJacobi([Fraction(0)] * 12, [Fraction(1, 4)] * 11)),
                ("c = 1/3", MonicJacobi([Fraction(1, 2)] * 12, [Fraction(1, 3)] * 11))):
    Js, _ = symmetrize(J)
    fac = generalized_cholesky(Js, 4)
    L, Lam = fac.dense()
    Lt = [list(r) for r in zip(*L)]
    R = matmul(matmul(L, Lam), Lt)
    M = Js.matrix(len(L))
    err = max(abs(float(R[i][j] - M[i][j])) for i in range(len(M)) for j in range(len(M)))
    print(f"{name:>11}: blocks {fac.kseq}, exact={not isinstance(Js.offdiag[0], float)}, max error {err:.1e}")
    print("             Lambda blocks:", [(str(a), None if b is None else str(b)) for a, b in fac.blocks])
