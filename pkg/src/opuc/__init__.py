"""Orthogonal polynomials on the unit circle, their order-one quasi companions,
para-orthogonal polynomials, CD kernels and chain sequences."""

from .cpoly import CPoly, roots
from .measure import (
    BernsteinSzego,
    ChristoffelLebesgue,
    Custom,
    Lebesgue,
    MeasureSpec,
    MomentTable,
    RationalMarcellan,
    TildeRational,
    companion_tilde,
    inner,
    moments,
    total_mass,
)
from .szego import OpucFamily, christoffel_family, family_from_alphas, family_from_measure, szego_step, verify_orthogonality
from .marcellan import (
    M2Report,
    QuasiFamily,
    a_from_quasi,
    alpha_from_corollary,
    marcellan_a_seq,
    quasi_family,
    reconstruct_phi,
    verify_m2,
)
from .kernels import InequalityReport, cd_kernel, kernel_type
from .popuc_chain import ChainData, chain_data, monic_L, popuc, popuc_lc, r_polys, scaling_T, verify_r_consistency

__version__ = "0.1.0"
