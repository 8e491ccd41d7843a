"""Pade approximants at infinity and convergence diagnostics.

Approximants are rational functions in lambda matching the expansion
``F(lambda) ~ -sum s_i / lambda**(i+1)``:

* ``diagonal_pade``  ``-Q_j / P_j`` of the GJM of the moments (``2 n_j`` terms).
* ``modified_pade``  ``-(Q_n + tau Q_{n-1}) / (P_n + tau P_{n-1})`` for a Jacobi
  matrix (``2n - 1`` terms; the poles are the eigenvalues of the truncation
  with its last diagonal entry shifted).
* ``dplus_pade``     diagonal approximants of ``(F(lambda) + s_minus1) / lambda``
  built from modified approximants of ``F``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import DegenerateDenominator, InsufficientDepth, PoleCollision, RationalTermination
from .gjm import GJM, m_function, schur_pfraction
from .moments import MomentSequence
from .numeric import Poly, RationalFn, is_exact, tau_zero
from .orthopoly import MonicJacobi, classical_polys
from .transforms import christoffel, geronimus, lu_jacobi, ul_jacobi

__all__ = [
    "RationalFn",
    "diagonal_pade",
    "diagonal_sequence",
    "modified_pade",
    "dplus_pade",
    "pade_order_check",
    "poles",
    "truncation_eigenvalues",
    "shifted_truncation_eigenvalues",
    "boundedness_diagnostic",
    "convergence_scan",
    "quadrature_stieltjes",
    "chebyshev_u_weight",
    "chebyshev_u_stieltjes",
]


def _scaled(f: RationalFn, scale) -> RationalFn:
    return RationalFn(f.num * scale, f.den, f.meta)


def diagonal_sequence(s, jmax: int, tau=None):
    """Diagonal approximants for ``j = 1..jmax``.

    Stops early, without error, if the continued fraction terminates (the
    function is rational and the last approximant is exact).
    """
    try:
        G, rec = schur_pfraction(s, jmax, tau)
    except RationalTermination as exc:
        G = exc.partial
        if G is None or G.depth == 0:
            raise
    out = []
    for j in range(1, G.depth + 1):
        out.append(_scaled(m_function(G.head(j), j), G.scale))
    return out


def diagonal_pade(s, j: int, tau=None) -> RationalFn:
    """``[n_j / n_j]`` approximant (numerator degree below ``n_j``).

    Matches at least ``2 n_j`` terms of the moment expansion.
    """
    G, _ = schur_pfraction(s, j, tau)
    return _scaled(m_function(G.head(j), j), G.scale)


def modified_pade(J: MonicJacobi, tau_param, n: int) -> RationalFn:
    """``-(Q_n + tau Q_{n-1}) / (P_n + tau P_{n-1})``; matches ``2n - 1`` terms."""
    if n < 1:
        raise InsufficientDepth("n must be at least 1", index=n)
    pp = classical_polys(J, n)
    num = -(pp.Q[n] + pp.Q[n - 1] * tau_param)
    den = pp.P[n] + pp.P[n - 1] * tau_param
    return RationalFn(num, den, {"j": n, "n_j": n, "kind": "modified", "tau": tau_param})


def dplus_pade(J: MonicJacobi, s_minus1, j: int, tau=None) -> RationalFn:
    """Diagonal approximant of ``(F(lambda) + s_minus1) / lambda``.

    With ``H_n = Q_n - s_minus1 P_n`` and ``n = n_j`` (the j-th normal index
    of the new function), the parameter ``t = -H_n(0) / H_{n-1}(0)`` makes
    the modified approximant ``R`` satisfy ``R(0) = -s_minus1``, so
    ``(R + s_minus1) / lambda`` is a polynomial ratio of type ``[n/n]``.
    """
    if j < 1:
        raise InsufficientDepth("j must be at least 1", index=j)
    F = ul_jacobi(J, s_minus1, j, tau)
    n = F.offsets()[j]
    pp = classical_polys(J, n)
    H = [q(0) - s_minus1 * p(0) for p, q in zip(pp.P, pp.Q)]
    t = -H[n] / H[n - 1]
    den = pp.P[n] + pp.P[n - 1] * t
    num = -(pp.Q[n] + pp.Q[n - 1] * t) + den * s_minus1
    quo, rem = num.divmod(Poly((num[0] * 0, num[0] * 0 + 1)))
    if is_exact(rem[0]) and rem[0] != 0:
        raise ArithmeticError("numerator does not vanish at zero")
    if den.is_zero():
        raise DegenerateDenominator(index=j)
    return RationalFn(quo, den, {"j": j, "n_j": n, "kind": "dplus", "tau": t})


def pade_order_check(f: RationalFn, s: Sequence, rtol: float = 1e-10) -> int:
    """Number of leading moment terms reproduced by ``f``.

    Compares the expansion of ``f`` in ``1/lambda`` with ``-s_i``.  Exact
    inputs are compared exactly; floats to relative tolerance ``rtol``.
    """
    s = tuple(s.s if isinstance(s, MomentSequence) else s)
    coeffs = f.expand(len(s))
    scale = max((abs(x) for x in s), default=1.0) or 1.0
    count = 0
    for a, m in zip(coeffs, s):
        if is_exact(a) and is_exact(m):
            ok = a == -m
        else:
            ok = abs(a + m) <= rtol * scale
        if not ok:
            break
        count += 1
    return count


def poles(f: RationalFn):
    """Zeros of the denominator (companion-matrix eigenvalues)."""
    return f.den.roots()


def truncation_eigenvalues(X, j: int):
    """Eigenvalues of the dense truncation with ``j`` rows (Jacobi) or ``j`` blocks (GJM)."""
    M = np.array(X.matrix(j), dtype=float)
    if M.size == 0:
        return np.array([], dtype=complex)
    return np.linalg.eigvals(M).astype(complex)


def shifted_truncation_eigenvalues(J: MonicJacobi, tau_param, n: int):
    """Zeros of ``P_n + tau P_{n-1}``: eigenvalues of ``J_n`` with ``b_{n-1} - tau``.

    Computed from the symmetric tridiagonal form, so they are real.
    """
    d = np.array([float(x) for x in J.b[:n]])
    d[-1] -= float(tau_param)
    e = np.sqrt(np.array([float(x) for x in J.c[: n - 1]]))
    if n == 1:
        return d.astype(complex)
    return eigvalsh_tridiagonal(d, e).astype(complex)


# ---------------------------------------------------------------- diagnostics


@dataclass(frozen=True)
class DiagnosticRow:
    j: int
    n_j: int
    ratio: object
    running_max: object
    max_pole_radius: float | None


@dataclass(frozen=True)
class DiagnosticsReport:
    """Growth of the factor ratios controlling uniform boundedness.

    Only an observation: ``exceeded`` says whether the running maximum of the
    ratios went above ``threshold`` within the computed depth.
    """

    kind: str
    threshold: float
    rows: tuple

    @property
    def exceeded(self) -> bool:
        return any(r.running_max > self.threshold for r in self.rows)

    @property
    def max_pole_radius(self):
        vals = [r.max_pole_radius for r in self.rows if r.max_pole_radius is not None]
        return max(vals) if vals else None


def boundedness_diagnostic(J: MonicJacobi, kind: str, depth: int, s_minus1=None,
                           threshold: float = 10.0, with_poles: bool = True, tau=None) -> DiagnosticsReport:
    """Ratios for the Christoffel (``kind="C"``) or Geronimus (``"G"``) function.

    Row ``j`` (1-based) holds ``|P_{n_j}(0) / P_{n_{j-1}}(0)|`` for kind C and
    ``|H_{n_{j+1}-1}(0) / H_{n_j - 1}(0)|`` (``H = Q - s_minus1 P``) for kind G,
    together with the largest pole modulus of the diagonal approximant of the
    transformed function with ``j`` blocks.
    """
    kind = kind.upper()
    if kind == "C":
        F = lu_jacobi(J, depth, tau)
        ratios = [abs(e.u0) for e in F.payload]
        G = christoffel(J, depth, tau) if with_poles else None
    elif kind == "G":
        if s_minus1 is None:
            raise ValueError("kind G needs s_minus1")
        F = ul_jacobi(J, s_minus1, depth, tau)
        ratios = [abs(e.l) for e in F.payload]
        G = geronimus(J, s_minus1, depth, tau) if with_poles else None
    else:
        raise ValueError(f"unknown kind {kind!r}")
    offs = F.offsets()
    rows = []
    run = None
    for j in range(1, depth + 1):
        r = ratios[j - 1]
        run = r if run is None or r > run else run
        radius = None
        if G is not None:
            ev = truncation_eigenvalues(G, j)
            radius = float(np.max(np.abs(ev))) if ev.size else 0.0
        rows.append(DiagnosticRow(j, offs[j], r, run, radius))
    return DiagnosticsReport(kind, float(threshold), tuple(rows))


@dataclass(frozen=True)
class ScanRow:
    j: int
    n_j: int
    lam: complex
    approx: complex
    abs_error: float
    max_pole_radius: float
    pole_collision: bool = False


def _in_region(lam, region):
    if region is None:
        return False
    lam = complex(lam)
    if lam.imag != 0:
        return False
    for a, b in region:
        if float(a) <= lam.real <= float(b):
            return True
    return False


def convergence_scan(oracle: Callable, s, lambdas, jmax: int, region=None, tau=None):
    """Error of the diagonal approximants against ``oracle`` on a set of points.

    Points inside ``region`` (real intervals covering the support) are
    rejected.  A point that hits a pole gives a row with NaN values and
    ``pole_collision=True``.
    """
    lambdas = list(lambdas)
    for lam in lambdas:
        if _in_region(lam, region):
            raise PoleCollision(f"evaluation point {lam} lies in the support region")
    approximants = diagonal_sequence(s, jmax, tau)
    rows = []
    for f in approximants:
        radius = float(np.max(np.abs(poles(f)))) if f.den.degree > 0 else 0.0
        ff = RationalFn(f.num.to_float(), f.den.to_float(), f.meta)
        scale = max(abs(float(a)) for a in f.den.coeffs)
        for lam in lambdas:
            lamc = complex(lam)
            d = ff.den(lamc)
            if abs(d) <= tau_zero(tau) * scale * max(1.0, abs(lamc)) ** f.den.degree:
                rows.append(ScanRow(f.meta["j"], f.meta["n_j"], lamc, complex(math.nan, math.nan), math.nan, radius, True))
                continue
            val = ff.num(lamc) / d
            ref = complex(oracle(lam))
            rows.append(ScanRow(f.meta["j"], f.meta["n_j"], lamc, val, abs(val - ref), radius))
    return rows


def quadrature_stieltjes(weight: Callable, a: float, b: float, lam: float) -> float:
    """``integral_a^b weight(t) / (t - lam) dt`` for real ``lam`` outside [a, b]."""
    from scipy.integrate import quad

    val, _ = quad(lambda t: weight(t) / (t - lam), a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def chebyshev_u_weight(t):
    return 2.0 / math.pi * math.sqrt(max(1.0 - t * t, 0.0))


def chebyshev_u_stieltjes(lam):
    lam = complex(lam)
    val = -2 * lam + 2 * cmath.sqrt(lam - 1) * cmath.sqrt(lam + 1)
    return val.real if lam.imag == 0 else val
