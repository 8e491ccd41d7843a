"""Regenerates the frozen reference values used by the tests.

Uses sympy only, never the package under test.  Run by hand:

    python tests/oracles/make_frozen.py
"""
import sympy as sp

lam = sp.Symbol("lam")
R = sp.Rational


def coeffs(expr):
    p = sp.Poly(sp.expand(expr), lam)
    return [str(c) for c in reversed(p.all_coeffs())]


# period-two Jacobi matrix b = (1, 0, 1, 0, ...), c = 1
n = 12
J = sp.zeros(n, n)
for i in range(n):
    J[i, i] = 1 if i % 2 == 0 else 0
    if i + 1 < n:
        J[i, i + 1] = 1
        J[i + 1, i] = 1
print("period2 moments", [str((J**k)[0, 0]) for k in range(12)])

# its Christoffel transform, first three rows
M = sp.Matrix([[2, 1, 0], [-1, -2, 1], [0, -2, R(5, 2)]])
print("christoffel P3", coeffs((lam * sp.eye(3) - M).det()))
print("christoffel Q3", coeffs((lam * sp.eye(2) - M[1:, 1:]).det()))

# Chebyshev Christoffel GJM, two 2x2 blocks
M4 = sp.Matrix([[0, 1, 0, 0], [R(1, 2), 0, 1, 0], [0, 0, 0, 1], [R(1, 16), 0, R(1, 2), 0]])
print("cheb christoffel P2", coeffs((lam * sp.eye(4) - M4).det()))
print("cheb christoffel Q2", coeffs((lam * sp.eye(2) - M4[2:, 2:]).det()))

# bordered-determinant denominator of degree 4 for s = (0, 1, 0, 1/2, 0, 5/16, 0, 7/32)
s = [0, 1, 0, R(1, 2), 0, R(5, 16), 0, R(7, 32)]
H = sp.Matrix([[s[i + k] for k in range(5)] for i in range(4)] + [[lam**k for k in range(5)]])
d = sp.Matrix([[s[i + k] for k in range(4)] for i in range(4)]).det()
print("bordered P4", coeffs(H.det() / d))

# Chebyshev Stieltjes function at 2 and period-two function at 3
print("chebU F(2)", sp.N(-4 + 2 * sp.sqrt(3), 20))
x = sp.Integer(3)
print("period2 F(3)", sp.N(-x / 2 + sp.sqrt(x * (x**2 - x - 4) / (x - 1)) / 2, 20))
