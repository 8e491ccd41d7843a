"""Christoffel and Geronimus transforms of Jacobi matrices via block LU/UL
factorizations, generalized Jacobi matrices, and Pade approximants."""
from .cholesky import CholeskyFactors, SymJacobi, generalized_cholesky, symmetrize
from .errors import DarbouxError
from .gjm import (
    GJM,
    GJMBlock,
    GramMatrix,
    NormalizationRecord,
    gjm_moments,
    gram,
    jacobi_from_moments,
    m_function,
    schur_pfraction,
)
from .moments import (
    MeasureSpec,
    MomentSequence,
    NormalIndexReport,
    hankel_det,
    moments_from_jacobi,
    moments_from_measure,
    normal_indices,
    shift_for_christoffel,
    unshift,
)
from .numeric import Backend, Poly, RationalFn, Series, series_reciprocal
from .orthopoly import MonicJacobi, PolyPair, charpoly_oracle, classical_polys, det_formula_P, gjm_polys
from .pade import (
    boundedness_diagnostic,
    convergence_scan,
    diagonal_pade,
    dplus_pade,
    modified_pade,
    pade_order_check,
    poles,
)
from .transforms import (
    BlockFactors,
    FactorEntry,
    FactorKind,
    Order,
    block_product,
    christoffel,
    geronimus,
    inverse_christoffel,
    inverse_geronimus,
    lu_gjm,
    lu_jacobi,
    ul_gjm,
    ul_jacobi,
)

__version__ = "0.1.0"
