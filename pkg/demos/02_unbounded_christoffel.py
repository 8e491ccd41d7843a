"""
An unbounded Christoffel transform
==================================

The 2-periodic matrix b = (1, 0, 1, 0, ...), c = 1 is bounded, but its LU
factors are not: u grows like k.  The diagonal Pade approximants of the
transformed function then have poles running off to infinity.
"""
from fractions import Fraction

from darboux import boundedness_diagnostic, christoffel, lu_jacobi
from darboux.orthopoly import MonicJacobi

J = MonicJacobi.periodic([Fraction(1), Fraction(0)], [Fraction(1)], 42)

f = lu_jacobi(J, 10)
print("u:", [str(e.u0) for e in f.payload])
print("l:", [str(e.l) for e in f.payload])

G = christoffel(J, 3)
print("transformed matrix, first rows:")
for row in G.matrix(3):
    print("   ", [str(x) for x in row])

# float diagnostic: ratio column and the largest pole modulus per truncation
rep = boundedness_diagnostic(J.to_backend("float"), "C", 40)
print(f"{'j':>3} {'ratio':>8} {'max|pole|':>10}")
# even truncations carry one pole that escapes like j/2, odd ones stay near the support
for r in rep.rows[:4] + rep.rows[-4:]:
    print(f"{r.j:>3} {r.ratio:>8.3f} {r.max_pole_radius:>10.3f}")
print("threshold exceeded:", rep.exceeded, " largest pole:", round(rep.max_pole_radius, 2))
