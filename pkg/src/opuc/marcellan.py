"""Quasi-orthogonal polynomials of order one and the Marcellan class.

For a monic OPUC family ``Phi_n`` and coefficients ``a_n`` the quasi
polynomials are ``Phi~_n = Phi_n - a_n Phi_{n-1}`` (``Phi~_0 = 1``).  A
measure lies in the Marcellan class when some choice of ``a_n`` makes
``Phi~_n`` orthogonal for a second measure ``mu~``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .cpoly import CPoly, reverse
from .errors import (
    DataInconsistencyError,
    InconsistentInputsError,
    MissingCompanionError,
    NotApplicableError,
)
from .measure import MeasureSpec, inner, moments
from .szego import OpucFamily, family_from_measure, gram_offdiag

ZERO_ALPHA = 1e-12
RECONSTRUCT_TOL = 1e-9
CD2_TOL = 1e-9


@dataclass(frozen=True)
class QuasiFamily:
    """Quasi polynomials over ``base``; ``a[0]`` is the convention ``a_0 = 0``."""

    base: OpucFamily
    a: np.ndarray
    qphi: tuple
    qphi_star: tuple
    tilde_spec: Optional[MeasureSpec] = None
    tilde_fam: Optional[OpucFamily] = field(default=None, compare=False)

    @property
    def N(self) -> int:
        return self.base.N

    @property
    def tilde_alphas(self):
        return None if self.tilde_fam is None else self.tilde_fam.alpha


def quasi_forward(phi_n: CPoly, phi_star_n: CPoly, a_next: complex, alpha_n: complex) -> tuple[CPoly, CPoly]:
    """``(Phi~_{n+1}, Phi~*_{n+1})`` written through ``Phi_n`` and ``Phi_n^*`` only.

    ``Phi~_{n+1} = (z - a) Phi_n - conj(alpha_n) Phi_n^*`` and
    ``Phi~*_{n+1} = -alpha_n z Phi_n + (1 - conj(a) z) Phi_n^*``.
    """
    a, al = complex(a_next), complex(alpha_n)
    zphi = phi_n.shift(1)
    q = zphi - a * phi_n - np.conj(al) * phi_star_n
    qs = phi_star_n - np.conj(a) * phi_star_n.shift(1) - al * zphi
    return q, qs


def quasi_family(
    base: OpucFamily,
    a: Sequence[complex],
    tilde_spec: MeasureSpec | None = None,
    quadN: int | None = None,
) -> QuasiFamily:
    """Build ``Phi~_1..Phi~_N`` from ``a = (a_1, .., a_N)``; M2 membership is not assumed."""
    a = np.asarray(a, dtype=complex).ravel()
    if len(a) != base.N:
        raise ValueError(f"need {base.N} coefficients a_1..a_N, got {len(a)}")
    full = np.concatenate(([0j], a))
    full.flags.writeable = False
    qphi = [CPoly.one()]
    for n in range(1, base.N + 1):
        qphi.append(base.phi[n] - full[n] * base.phi[n - 1])
    qstar = tuple(reverse(p, n) for n, p in enumerate(qphi))
    tilde_fam = family_from_measure(tilde_spec, base.N, quadN) if tilde_spec is not None else None
    return QuasiFamily(base, full, tuple(qphi), qstar, tilde_spec, tilde_fam)


def marcellan_a_seq(base: OpucFamily, tilde=None) -> np.ndarray:
    """Coefficients ``a_1..a_N`` tying ``base`` to a companion family.

    ``a_{n+1} = (conj(alpha_n) - conj(alpha~_n)) / conj(alpha_{n-1})`` with
    ``conj(alpha_{-1}) = -1``.  ``tilde`` may be the companion OpucFamily or
    its Verblunsky coefficients; without it ``alpha~_n = 0`` is assumed,
    which gives ``a_1 = -conj(alpha_0)`` and the ratio rule
    ``a_{n+1} = conj(alpha_n) / conj(alpha_{n-1})``.
    """
    al = np.asarray(base.alpha, dtype=complex)
    N = base.N
    for n in range(N):
        if abs(al[n]) <= ZERO_ALPHA:
            raise NotApplicableError(f"alpha_{n} vanishes; the ratio rule does not apply", index=n)
    if tilde is None:
        tal = np.zeros(N, dtype=complex)
    else:
        tal = np.asarray(tilde.alpha if isinstance(tilde, OpucFamily) else tilde, dtype=complex)[:N]
        if len(tal) < N:
            raise ValueError(f"need {N} companion coefficients, got {len(tal)}")
    out = np.empty(N, dtype=complex)
    for n in range(N):
        prev = -1.0 if n == 0 else np.conj(al[n - 1])
        out[n] = (np.conj(al[n]) - np.conj(tal[n])) / prev
    return out


def reconstruct_phi(qphi_next: CPoly, qphi_star_next: CPoly, a_next: complex, alpha_n: complex) -> tuple[CPoly, CPoly]:
    """Invert the 2x2 quasi system and return ``(Phi_n, Phi_n^*)``.

    Both right-hand sides are divided exactly by
    ``d(z) = (z - a)(1 - conj(a) z) - |alpha_n|^2 z``.
    """
    a, al = complex(a_next), complex(alpha_n)
    ab = np.conj(a)
    d = CPoly((-a, 1.0 + abs(a) ** 2 - abs(al) ** 2, -ab))
    if d.is_zero():
        raise InconsistentInputsError("determinant polynomial vanishes identically")
    one_minus = CPoly((1.0, -ab))
    z_minus = CPoly((-a, 1.0))
    num_phi = one_minus * qphi_next + np.conj(al) * qphi_star_next
    num_star = al * qphi_next.shift(1) + z_minus * qphi_star_next
    return _exact_quotient(num_phi, d), _exact_quotient(num_star, d)


def _exact_quotient(num: CPoly, d: CPoly) -> CPoly:
    """``num / d`` for a division known to be exact.

    Solved as least squares on the convolution matrix rather than by long
    division, which loses digits when ``d`` has a double zero on the circle
    (``a`` real and ``|alpha| = |1 - a|``).
    """
    if num.is_zero():
        return CPoly.zero()
    m = num.degree - d.degree
    if m < 0:
        raise InconsistentInputsError("numerator degree is below the determinant degree")
    dc = np.asarray(d.coeffs)
    A = np.zeros((num.degree + 1, m + 1), dtype=complex)
    for k in range(m + 1):
        A[k : k + len(dc), k] = dc
    q, *_ = np.linalg.lstsq(A, num.coeffs, rcond=None)
    resid = float(np.max(np.abs(A @ q - num.coeffs)))
    if resid > RECONSTRUCT_TOL * max(1.0, float(np.max(np.abs(num.coeffs)))):
        raise InconsistentInputsError(f"division remainder {resid:.3e} does not vanish")
    return CPoly(q)


def a_from_quasi(qphi_next_at_0: complex, alpha_n: complex, alpha_prev: complex) -> complex:
    """``a_{n+1} = (Phi~_{n+1}(0) + conj(alpha_n)) / conj(alpha_{n-1})``.

    Pass ``alpha_prev = -1`` at ``n = 0``.
    """
    if alpha_prev == 0:
        raise NotApplicableError("alpha_{n-1} = 0; a_{n+1} is not determined")
    return complex((qphi_next_at_0 + np.conj(alpha_n)) / np.conj(alpha_prev))


def alpha_from_corollary(qf: QuasiFamily, n: int) -> complex:
    """``alpha_n = -conj(a_{n+1}) Phi~*_{n+1}(x) / Phi_n(x)`` at ``x = 1/conj(a_{n+1})``."""
    a = qf.a[n + 1]
    if a == 0:
        raise NotApplicableError(f"a_{n + 1} = 0", index=n + 1)
    x = 1.0 / np.conj(a)
    den = qf.base.phi[n](x)
    if den == 0:
        raise DataInconsistencyError(f"Phi_{n} vanishes at 1/conj(a_{n + 1})")
    return complex(-np.conj(a) * qf.qphi_star[n + 1](x) / den)


@dataclass(frozen=True)
class M2Report:
    gram_offdiag: float
    min_phi_integral: float
    cd2_deviation: float
    m0_tilde: float
    tol: float

    @property
    def orthogonal(self) -> bool:
        return self.gram_offdiag < self.tol

    @property
    def integrals_nonzero(self) -> bool:
        return self.min_phi_integral > self.tol * self.m0_tilde

    @property
    def cd2_ok(self) -> bool:
        return self.cd2_deviation < CD2_TOL

    @property
    def passed(self) -> bool:
        return self.orthogonal and self.integrals_nonzero and self.cd2_ok

    def to_json(self) -> dict:
        return {
            "gram_offdiag": self.gram_offdiag,
            "min_phi_integral": self.min_phi_integral,
            "cd2_deviation": self.cd2_deviation,
            "m0_tilde": self.m0_tilde,
            "tol": self.tol,
            "orthogonal": self.orthogonal,
            "integrals_nonzero": self.integrals_nonzero,
            "cd2_ok": self.cd2_ok,
            "pass": self.passed,
        }


def disk_grid(n_radii: int = 4, n_angles: int = 8) -> np.ndarray:
    """Deterministic points in the closed disk: radii k/n_radii, offset angles."""
    r = np.arange(1, n_radii + 1) / n_radii
    t = 2 * np.pi * (np.arange(n_angles) + 0.25) / n_angles
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def cd2_deviation(qphi, norms, z) -> float:
    """Max of ``|(|p2*|^2 - |p2|^2) - (1-|z|^2)(|p0|^2 + |p1|^2)|`` for orthonormal ``p_k``."""
    p = [qphi[k] / np.sqrt(norms[k]) for k in range(3)]
    p2s = reverse(p[2], 2)
    lhs = np.abs(p2s(z)) ** 2 - np.abs(p[2](z)) ** 2
    rhs = (1 - np.abs(z) ** 2) * (np.abs(p[0](z)) ** 2 + np.abs(p[1](z)) ** 2)
    return float(np.max(np.abs(lhs - rhs)))


def verify_m2(qf: QuasiFamily, quadN: int | None = None, tol: float = 1e-8) -> M2Report:
    """Check orthogonality of ``Phi~_n`` for ``mu~``, ``|int Phi_n dmu~| > 0`` and the degree-2 CD identity."""
    if qf.tilde_spec is None:
        raise MissingCompanionError("verify_m2 needs a companion measure")
    tbl = moments(qf.tilde_spec, qf.N, quadN)
    off = gram_offdiag(tbl, qf.qphi)
    one = CPoly.one()
    ints = [abs(inner(tbl, qf.base.phi[n], one)) for n in range(1, qf.N + 1)]
    norms = [inner(tbl, qf.qphi[k], qf.qphi[k]).real for k in range(min(3, qf.N + 1))]
    cd = cd2_deviation(qf.qphi, norms, disk_grid()) if qf.N >= 2 else 0.0
    return M2Report(off, float(min(ints)), cd, tbl.m0, tol)
