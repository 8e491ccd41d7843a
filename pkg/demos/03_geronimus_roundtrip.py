"""
Geronimus transform and back
============================

Factor J = UL with a free parameter s_minus1, swap to LU, and undo it with
the LU factorization of the result.  Everything stays in exact arithmetic.
"""
import random
from fractions import Fraction

from darboux import geronimus, gjm_moments, inverse_geronimus, moments_from_jacobi
from darboux.errors import ZeroDenominator
from darboux.orthopoly import MonicJacobi

rng = random.Random(7)
b = [Fraction(rng.randint(-4, 4), 4) for _ in range(16)]
c = [Fraction(rng.randint(1, 4), 4) for _ in range(15)]
J = MonicJacobi(b, c)

for t in (Fraction(1), Fraction(-1, 2), Fraction(0)):
    try:
        G = geronimus(J, t, 5)
    except ZeroDenominator as exc:
        print(f"s_minus1 = {t}: zero denominator at index {exc.index}")
        continue
    back = inverse_geronimus(G, 4)
    # the new moments are (-s_minus1, s_0, s_1, ...)
    s = moments_from_jacobi(J, 6)
    m = gjm_moments(G, 6, rescale=True)
    print(f"s_minus1 = {t}: blocks {G.kseq}, back to J: {back == J.truncate(back.rows)},",
          "moments:", [str(x) for x in m.s], "vs", [str(-t)] + [str(x) for x in s.s[:5]])
