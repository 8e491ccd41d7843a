"""
Two-by-two blocks from a symmetric measure
==========================================

The semicircle measure on [-1, 1] is symmetric, so every odd polynomial
vanishes at zero.  Multiplying the measure by t therefore skips every other
normal index and the transformed matrix is built from 2x2 blocks.
"""
from fractions import Fraction

from darboux import MeasureSpec, christoffel, moments_from_measure, normal_indices, schur_pfraction, shift_for_christoffel
from darboux.gjm import jacobi_from_moments

s = moments_from_measure(MeasureSpec(named="chebyshevU"), 32)
print("moments:", [str(x) for x in s.s[:8]])

# the Jacobi matrix: b = 0, c = 1/4
J = jacobi_from_moments(s, 14)
print("b:", [str(x) for x in J.b[:4]], " c:", [str(x) for x in J.c[:4]])

# moments of t dsigma have normal indices 2, 4, 6, ...
rep = normal_indices(shift_for_christoffel(s), 8)
print("normal indices of t dsigma:", rep.indices)

# route 1: factor J = LU and multiply back as UL
G = christoffel(J, 4)
# route 2: continued fraction of the shifted moments
H, rec = schur_pfraction(shift_for_christoffel(s), 4)
print("block sizes:", G.kseq, " same as series route:", G == H.head(4), " scale:", rec.scale)

for row in G.matrix(2):
    print("   ", [str(Fraction(x)) for x in row])
