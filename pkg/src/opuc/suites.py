"""Verification suites run by ``opuc verify``.

Each suite takes a :class:`~opuc.presets.Setup` and returns a list of
:class:`~opuc.kernels.InequalityReport`.  Identity checks are expressed as
``deviation <= tolerance`` reports so every suite shares one output shape.
"""

from __future__ import annotations

import numpy as np

from .cpoly import CPoly
from .errors import MissingCompanionError, PreconditionError
from .kernels import (
    InequalityReport,
    cd_kernel,
    check_norm_inequalities,
    diag_gap_bound,
    kernel_square_bound,
    l2_kernel_bound,
    lubinsky_classical,
    lubinsky_gap,
    subreproducing_check,
)
from .marcellan import disk_grid, verify_m2
from .measure import Custom, Lebesgue
from .popuc_chain import chain_data, verify_r_consistency
from .szego import family_from_alphas

SUITES = ("norms", "lubinsky", "subrepro", "diaggap", "m2", "cdformula", "chain")
CD_RTOL = 1e-9
CHAIN_TOL = 1e-10
TTRR_TOL = 1e-7
SEED = 20240917


def _need_companion(setup):
    if setup.qf is None or setup.tilde_fam is None:
        raise MissingCompanionError("this suite needs a coefficient rule with a known companion measure (--a)")


def identity_report(name: str, deviation: float, tol: float, **context) -> InequalityReport:
    return InequalityReport(name, float(deviation), float(tol), context)


def random_disk(rng, k: int) -> np.ndarray:
    """Uniform points in the open disk, kept a little away from the circle."""
    r = 0.98 * np.sqrt(rng.random(k))
    return r * np.exp(2j * np.pi * rng.random(k))


def suite_norms(setup, n_max: int = 6):
    _need_companion(setup)
    out = []
    for n in range(1, min(n_max, setup.base.N - 1) + 1):
        out.extend(check_norm_inequalities(setup.base, setup.qf, n))
    return out


def lubinsky_grid() -> list[tuple[complex, complex]]:
    """16 (z, w) pairs in the closed disk."""
    z = disk_grid(4, 4)
    w = z[::-1] * np.exp(0.7j)
    return list(zip(z, w))


def suite_lubinsky(setup, n_max: int = 6):
    _need_companion(setup)
    out = []
    grid = lubinsky_grid()
    for n in range(1, min(n_max, setup.base.N - 1) + 1):
        for z, w in grid:
            rep, _ = lubinsky_gap(setup.base, setup.tilde_fam, setup.qf, n, z, w)
            out.append(rep)
        for z, _ in grid[::2]:
            out.append(l2_kernel_bound(setup.base, setup.tilde_fam, setup.qf, n, z))
    out.extend(classical_lubinsky_reports(n_max))
    return out


def classical_lubinsky_reports(n: int = 6):
    """Cross-check with ``mu1 = dtheta/2pi <= mu2 = 2 mu1``."""
    leb = family_from_alphas(Lebesgue(normalized=True), [0.0] * (n + 1), 1.0)
    doubled = family_from_alphas(Custom(lambda t: np.full(np.shape(t), 1 / np.pi), label="2x lebesgue-norm"), [0.0] * (n + 1), 2.0)
    return [lubinsky_classical(leb, doubled, n, z, w) for z, w in lubinsky_grid()]


def subrepro_fixtures(fam, n: int):
    """``(p, w, n)`` triples meeting the sign preconditions.

    ``p = Phi_0 + .. + Phi_n`` makes every ``<p, Phi_j>`` a positive norm; the
    point ``w`` is searched on ``[0, 1)`` for ``Phi_j(w) >= 0``.  When no such
    point exists the degree-0 fixture ``p = Phi_0`` is used.
    """
    p = CPoly.zero()
    for j in range(n + 1):
        p = p + fam.phi[j]
    out = []
    for w in (0.0, 0.3, 0.7, 0.95):
        vals = [fam.phi[j](w) for j in range(n + 1)]
        if all(abs(v.imag) <= 1e-12 * max(1.0, abs(v)) and v.real >= 0 for v in vals):
            out.append((p, w, n))
    if not out:
        out.append((CPoly.one(), 0.5, 0))
    return out


def suite_subrepro(setup, n_max: int = 6):
    fam = setup.base
    out = []
    for n in range(0, min(n_max, fam.N) + 1):
        for p, w, k in subrepro_fixtures(fam, n):
            try:
                out.append(subreproducing_check(fam, p, w, k))
            except PreconditionError:
                continue
        for z in (0.3 + 0.2j, -0.5j, 0.9, 0.6 * np.exp(2j)):
            out.append(kernel_square_bound(fam, n, z))
    return out


def suite_diaggap(setup, n_max: int = 6):
    _need_companion(setup)
    out = []
    circle = np.exp(2j * np.pi * (np.arange(8) + 0.125) / 8)
    for n in range(1, min(n_max, setup.base.N - 1) + 1):
        for z in circle:
            out.extend(r for r in diag_gap_bound(setup.base, setup.qf, n, z) if r is not None)
    return out


def suite_m2(setup, tol: float = 1e-8):
    _need_companion(setup)
    rep = verify_m2(setup.qf, tol=tol)
    return [
        identity_report("m2_gram_offdiag", rep.gram_offdiag, tol),
        # |int Phi_n dmu~| must stay above tol * m0(mu~): lhs <= rhs with the roles swapped
        InequalityReport("m2_phi_integral", tol * rep.m0_tilde, rep.min_phi_integral, {"m0_tilde": rep.m0_tilde}),
        identity_report("m2_cd_degree2", rep.cd2_deviation, 1e-9),
    ]


def cd_deviation(fam, n, z, w) -> float:
    s = cd_kernel(fam, n, z, w, "sum")
    f = cd_kernel(fam, n, z, w, "formula")
    scale = np.sqrt(cd_kernel(fam, n, z, z).real * cd_kernel(fam, n, w, w).real)
    return float(np.max(np.abs(s - f) / scale))


def suite_cdformula(setup, n_max: int = 8, pairs: int = 100, seed: int = SEED):
    rng = np.random.default_rng(seed)
    z = random_disk(rng, pairs)
    w = random_disk(rng, pairs)
    fam = setup.base
    out = []
    for n in range(0, min(n_max, fam.N) + 1):
        out.append(identity_report("cd_formula", cd_deviation(fam, n, z, w), CD_RTOL, n=n))
    return out


def suite_chain(setup, N: int = 6):
    if setup.a is None:
        raise MissingCompanionError("the chain suite needs a coefficient rule (--a)")
    N = min(N, setup.base.N - 1)
    cd = chain_data(setup.base, setup.a, setup.tilde_fam, N)
    out = [identity_report("chain_identity", cd.chain_residual(), CHAIN_TOL, degenerate=cd.degenerate)]
    if setup.tilde_fam is not None:
        dev = verify_r_consistency(setup.base, setup.a, setup.tilde_fam, N)
        out.append(identity_report("ttrr_consistency", dev, TTRR_TOL, degenerate=cd.degenerate))
    return out


def run_suite(name: str, setup, n: int | None = None):
    fn = {
        "norms": suite_norms,
        "lubinsky": suite_lubinsky,
        "subrepro": suite_subrepro,
        "diaggap": suite_diaggap,
        "m2": suite_m2,
        "cdformula": suite_cdformula,
        "chain": suite_chain,
    }.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if n is None or name == "m2":
        return fn(setup)
    return fn(setup, n)
