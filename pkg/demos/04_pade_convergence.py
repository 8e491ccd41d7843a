"""
Pade convergence for the semicircle law
=======================================

Diagonal approximants against the closed form F(lambda) = -2 lambda + 2 sqrt(lambda^2 - 1),
which is itself checked against numerical quadrature.
"""
import numpy as np

from darboux import MeasureSpec, convergence_scan, moments_from_measure
from darboux.pade import chebyshev_u_stieltjes, chebyshev_u_weight, quadrature_stieltjes

lam = 2.0
print("closed form:", chebyshev_u_stieltjes(lam), " quadrature:", quadrature_stieltjes(chebyshev_u_weight, -1, 1, lam))

s = moments_from_measure(MeasureSpec(named="chebyshevU"), 40)
points = [2.0, 1.2, -1.5, 0.5j]
rows = convergence_scan(chebyshev_u_stieltjes, s, points, 10, region=[(-1, 1)])

print(f"{'j':>3}" + "".join(f"{str(p):>14}" for p in points))
for j in range(1, 11):
    errs = [r.abs_error for r in rows if r.j == j]
    print(f"{j:>3}" + "".join(f"{e:>14.3e}" for e in errs))

# convergence is geometric with rate |lambda - sqrt(lambda^2 - 1)|^2
print("predicted rate at 2:", (2 - np.sqrt(3)) ** 2)
