"""Monic OPUC families built by the Szego recursion.

Sign convention, used everywhere in the package::

    Phi_{n+1}(z)  = z Phi_n(z) - conj(alpha_n) Phi_n^*(z)
    Phi_{n+1}^*(z) = Phi_n^*(z) - alpha_n z Phi_n(z)

so ``alpha_n = -conj(Phi_{n+1}(0))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ._util import complex_from_json, complex_to_json
from .cpoly import CPoly, divmod_poly, reverse
from .errors import ConditioningError, InconsistentInputsError, InvalidMeasureError
from .measure import ChristoffelLebesgue, Custom, Lebesgue, MeasureSpec, inner, moments

CONDITIONING_MARGIN = 1e-12
DIVISION_RESIDUAL_TOL = 1e-9

SpecLike = Union[MeasureSpec, str, None]


@dataclass(frozen=True)
class OpucFamily:
    """Monic OPUC ``Phi_0..Phi_N`` of one measure, with Verblunsky data and norms."""

    spec: SpecLike
    N: int
    phi: tuple
    phi_star: tuple
    alpha: np.ndarray
    norm_sq: np.ndarray

    def orthonormal(self, k: int) -> CPoly:
        return self.phi[k] / np.sqrt(self.norm_sq[k])

    def orthonormal_star(self, k: int) -> CPoly:
        return self.phi_star[k] / np.sqrt(self.norm_sq[k])

    @property
    def m0(self) -> float:
        return float(self.norm_sq[0])

    def to_json(self) -> dict:
        if isinstance(self.spec, MeasureSpec):
            spec = self.spec.to_json()
        else:
            spec = self.spec
        return {
            "spec": spec,
            "alphas": [complex_to_json(a) for a in self.alpha],
            "norm_sq": [float(v) for v in self.norm_sq],
            "phi": [p.to_json() for p in self.phi],
        }

    @classmethod
    def from_json(cls, data: dict) -> OpucFamily:
        spec = data.get("spec")
        if isinstance(spec, dict):
            spec = MeasureSpec.from_json(spec)
        phi = tuple(CPoly.from_json(p) for p in data["phi"])
        return cls(
            spec=spec,
            N=len(phi) - 1,
            phi=phi,
            phi_star=tuple(reverse(p, n) for n, p in enumerate(phi)),
            alpha=_frozen([complex_from_json(a) for a in data["alphas"]]),
            norm_sq=_frozen(data["norm_sq"], dtype=float),
        )


def _frozen(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


def szego_step(phi_n: CPoly, phi_star_n: CPoly, alpha_n: complex) -> tuple[CPoly, CPoly]:
    """One forward step of the recursion: ``(Phi_{n+1}, Phi_{n+1}^*)``."""
    alpha_n = complex(alpha_n)
    if abs(alpha_n) >= 1:
        raise ValueError(f"Verblunsky coefficient {alpha_n} is not inside the unit disk")
    zphi = phi_n.shift(1)
    return zphi - np.conj(alpha_n) * phi_star_n, phi_star_n - alpha_n * zphi


def family_from_alphas(spec_label: SpecLike, alphas: Sequence[complex], norm0: float = 1.0) -> OpucFamily:
    """Iterate the recursion; norms follow ``||Phi_{n+1}||^2 = ||Phi_n||^2 (1 - |alpha_n|^2)``."""
    alphas = [complex(a) for a in alphas]
    phi, phi_star = [CPoly.one()], [CPoly.one()]
    norms = [float(norm0)]
    for a in alphas:
        p, ps = szego_step(phi[-1], phi_star[-1], a)
        phi.append(p)
        phi_star.append(ps)
        norms.append(norms[-1] * (1.0 - abs(a) ** 2))
    return OpucFamily(spec_label, len(alphas), tuple(phi), tuple(phi_star), _frozen(alphas), _frozen(norms, float))


def family_from_measure(spec: MeasureSpec, N: int, quadN: int | None = None) -> OpucFamily:
    """OPUC of ``spec`` up to degree ``N`` from its trigonometric moments.

    Each step reads ``conj(alpha_n) = <z Phi_n, Phi_n^*> / ||Phi_n||^2`` off
    the moment table and advances the recursion.  Norms are measured directly.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    tbl = moments(spec, N + 1, quadN)
    phi, phi_star = [CPoly.one()], [CPoly.one()]
    alphas, norms = [], [tbl.m0]
    for n in range(N):
        nsq = norms[-1]
        abar = inner(tbl, phi[n].shift(1), phi_star[n]) / nsq
        a = np.conj(abar)
        if abs(a) >= 1 - CONDITIONING_MARGIN:
            raise ConditioningError(f"|alpha_{n}| = {abs(a):.3e} is too close to 1", n=n)
        p, ps = szego_step(phi[n], phi_star[n], a)
        phi.append(p)
        phi_star.append(ps)
        alphas.append(a)
        norms.append(inner(tbl, p, p).real)
    return OpucFamily(spec, N, tuple(phi), tuple(phi_star), _frozen(alphas), _frozen(norms, float))


def _transformed_spec(spec, gamma):
    if isinstance(spec, Lebesgue) and spec.normalized:
        return ChristoffelLebesgue(gamma)
    if isinstance(spec, MeasureSpec):

        def weight(theta, _base=spec, _g=gamma):
            return np.abs(np.exp(1j * theta) - _g) ** 2 * _base.weight(theta)

        return Custom(weight, label=f"|z-({gamma})|^2 x {spec.variant}")
    return None


def christoffel_family(nu: OpucFamily, gamma: complex, N: int) -> OpucFamily:
    """OPUC of ``|z - gamma|^2 d nu`` from the kernel of ``nu``.

    ``Phi_{n-1}(z; gamma) = (Psi_n(z) - Psi_n(gamma) K_{n-1}(z, gamma) / K_{n-1}(gamma, gamma)) / (z - gamma)``
    where ``Psi`` are the monic OPUC of ``nu``; ``nu`` must reach degree ``N + 1``.
    """
    gamma = complex(gamma)
    if nu.N < N + 1:
        raise ValueError(f"base family needs degree {N + 1}, has {nu.N}")
    lin = CPoly((-gamma, 1.0))
    kernel = CPoly.zero()  # K_{n-1}(z, gamma) as a polynomial in z
    kdiag = 0.0
    phi = []
    for n in range(1, N + 2):
        on = nu.orthonormal(n - 1)
        val = on(gamma)
        kernel = kernel + np.conj(val) * on
        kdiag += abs(val) ** 2
        if kdiag <= 0:
            raise InconsistentInputsError(f"K_{n - 1}(gamma, gamma) vanishes")
        psi = nu.phi[n]
        num = psi - (psi(gamma) / kdiag) * kernel
        quot, rem = divmod_poly(num, lin)
        scale = max(1.0, float(np.max(np.abs(num.coeffs))))
        if not rem.is_zero() and np.max(np.abs(rem.coeffs)) > DIVISION_RESIDUAL_TOL * scale:
            raise InconsistentInputsError(
                f"division by (z - gamma) left remainder {np.max(np.abs(rem.coeffs)):.3e} at n={n}"
            )
        phi.append(quot)
    alphas = [-np.conj(p(0.0)) for p in phi[1:]]
    phi_star = tuple(reverse(p, n) for n, p in enumerate(phi))
    spec = _transformed_spec(nu.spec, gamma)
    if isinstance(spec, MeasureSpec):
        tbl = moments(spec, N)
        norms = [inner(tbl, p, p).real for p in phi]
    else:
        # no weight available: scale by the transformed total mass |z-gamma|^2 integrated
        # against nu, which is ||z - gamma||^2_nu, then use the norm recursion
        m0 = nu.norm_sq[1] + abs(np.conj(nu.alpha[0]) - gamma) ** 2 * nu.norm_sq[0]
        norms = [m0]
        for a in alphas:
            norms.append(norms[-1] * (1 - abs(a) ** 2))
    return OpucFamily(spec, N, tuple(phi), phi_star, _frozen(alphas), _frozen(norms, float))


def verify_orthogonality(fam: OpucFamily, quadN: int | None = None) -> float:
    """Largest normalized off-diagonal Gram entry ``|<Phi_j, Phi_k>| / (||Phi_j|| ||Phi_k||)``."""
    if not isinstance(fam.spec, MeasureSpec):
        raise InvalidMeasureError("family carries no measure to check against")
    return gram_offdiag(moments(fam.spec, fam.N, quadN), fam.phi)


def gram_offdiag(tbl, polys) -> float:
    n = len(polys)
    gram = np.array([[inner(tbl, polys[j], polys[k]) for k in range(n)] for j in range(n)])
    d = np.sqrt(np.abs(np.diag(gram)))
    normed = np.abs(gram) / np.outer(d, d)
    np.fill_diagonal(normed, 0.0)
    return float(normed.max()) if n > 1 else 0.0
