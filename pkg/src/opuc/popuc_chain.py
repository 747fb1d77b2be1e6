"""Para-orthogonal polynomials, the monic L_n family and chain-sequence data.

The polynomials ``R_n`` follow the three-term recurrence

    R_{n+1} = ((1 + i t_{n+1}) z + (1 - i t_{n+1})) R_n - 4 c_{n+1} z R_{n-1},

with ``R_{-1} = 0`` and ``R_0 = 1``.  Their coefficients come from the first
two Verblunsky coefficients of the base measure and the quasi coefficients
``a_1, a_2``; :func:`verify_r_consistency` compares the recurrence output
with ``R_n = T_{n-1} L_n(z; 1)`` built from the companion family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cpoly import CPoly, divmod_poly
from .errors import DegenerateDataError, DomainError, InconsistentInputsError
from .kernels import cd_kernel
from .szego import OpucFamily

CIRCLE_TOL = 1e-8
DIVISION_TOL = 1e-9


def _check_circle(zeta):
    if abs(abs(zeta) - 1) > CIRCLE_TOL:
        raise DomainError(f"zeta = {zeta} is not on the unit circle")


def _ratio(fam: OpucFamily, n: int, zeta: complex) -> complex:
    den = fam.phi_star[n](zeta)
    if den == 0:
        raise DegenerateDataError(f"Phi*_{n} vanishes at zeta = {zeta}")
    return fam.phi[n](zeta) / den


def popuc(fam: OpucFamily, n: int, zeta: complex) -> CPoly:
    """``Phi_n - (Phi_n(zeta) / Phi*_n(zeta)) Phi*_n``; its zeros lie on the circle."""
    zeta = complex(zeta)
    _check_circle(zeta)
    return fam.phi[n] - _ratio(fam, n, zeta) * fam.phi_star[n]


def popuc_lc(n: int, gamma: complex) -> CPoly:
    """``z^n - 1 - gamma (z^{n-1} - 1)``, which always vanishes at 1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    c = np.zeros(n + 1, dtype=complex)
    c[0] = gamma - 1
    c[n - 1] = -gamma
    c[n] = 1
    return CPoly(c)


def circle_deviation(p: CPoly) -> float:
    """Largest ``||r| - 1|`` over the roots of ``p``."""
    return float(np.max(np.abs(np.abs(p.roots()) - 1)))


def monic_L(fam: OpucFamily, n: int, zeta: complex) -> CPoly:
    """``(z Phi_n - zeta (Phi_n(zeta) / Phi*_n(zeta)) Phi*_n) / (z - zeta)``, monic of degree n."""
    zeta = complex(zeta)
    _check_circle(zeta)
    num = fam.phi[n].shift(1) - zeta * _ratio(fam, n, zeta) * fam.phi_star[n]
    quot, rem = divmod_poly(num, CPoly((-zeta, 1.0)))
    scale = max(1.0, float(np.max(np.abs(num.coeffs))))
    if not rem.is_zero() and np.max(np.abs(rem.coeffs)) > DIVISION_TOL * scale:
        raise InconsistentInputsError(f"division by (z - zeta) left remainder {np.max(np.abs(rem.coeffs)):.3e}")
    return quot


@dataclass(frozen=True)
class ChainData:
    """Recurrence data for ``R_n``.

    ``t[n]`` (n = 1..N) and ``g[n]`` (n = 0..N) are stored at their own index,
    ``c[n]`` (n = 1..N+1) likewise; index 0 of ``t`` and ``c`` is unused.
    The chain sequence satisfies ``c[n] = (1 - g[n-1]) g[n]``, and the
    recurrence step to ``R_{n+1}`` uses ``c[n]`` (see :meth:`ttrr_c`).
    """

    N: int
    t: np.ndarray
    c: np.ndarray
    g: np.ndarray
    w1: complex
    tau: complex
    r: tuple

    @property
    def degenerate(self) -> bool:
        return bool(np.any(self.c[1:] <= 0) or np.any((self.g <= 0) | (self.g >= 1)))

    def ttrr_c(self) -> np.ndarray:
        """Coefficient of ``-4 z R_{n-1}`` in the step to ``R_n``, indexed by ``n``."""
        out = np.zeros(self.N + 1)
        out[2:] = self.c[1 : self.N]
        return out

    def chain_residual(self) -> float:
        n = np.arange(1, self.N + 1)
        return float(np.max(np.abs(self.c[n] - (1 - self.g[n - 1]) * self.g[n])))

    def to_json(self) -> dict:
        return {
            "t": [float(v) for v in self.t[1:]],
            "c": [float(v) for v in self.c[1:]],
            "g": [float(v) for v in self.g],
            "tau": [float(self.tau.real), float(self.tau.imag)],
            "degenerate": self.degenerate,
        }


def _a_list(a):
    if hasattr(a, "qphi"):
        return np.asarray(a.a[1:], dtype=complex)
    return np.asarray(a, dtype=complex).ravel()


def chain_data(base: OpucFamily, a, tilde_fam: OpucFamily | None = None, N: int | None = None) -> ChainData:
    """Sequences ``t, c, g`` from ``alpha_0, alpha_1, a_1, a_2`` and the recurrence polynomials.

    With ``w1 = alpha_0 + conj(a_1)`` (the companion's first Verblunsky
    coefficient) and
    ``tau = (1 - conj(alpha_0) - a_1) / (1 - alpha_0 - conj(a_1)) (alpha_1 - conj(a_2) alpha_0)``::

        t1 = -Im w1 / (1 - Re w1)          t2 = -Im tau / (1 - Re tau)
        g0 = |1 - w1|^2 / (2 (1 - Re w1))  g1 = |1 - tau|^2 / (2 (1 - Re tau))
        c1 = (1 - |w1|^2) |1 - tau|^2 / (4 (1 - Re w1)(1 - Re tau))
        c2 = (1 - |tau|^2) / (4 (1 - Re tau))

    and ``t_n = 0``, ``g_n = 1/2``, ``c_n = 1/4`` beyond.  ``tilde_fam`` is
    accepted for symmetry with :func:`verify_r_consistency` and not needed here.
    """
    a = _a_list(a)
    N = base.N if N is None else N
    if N < 2 or len(base.alpha) < 2 or len(a) < 2:
        raise ValueError("chain data needs alpha_0, alpha_1, a_1, a_2 and N >= 2")
    al0, al1 = complex(base.alpha[0]), complex(base.alpha[1])
    a1, a2 = complex(a[0]), complex(a[1])
    den = 1 - al0 - np.conj(a1)
    if abs(den) == 0:
        raise DegenerateDataError("1 - alpha_0 - conj(a_1) vanishes")
    w1 = al0 + np.conj(a1)
    tau = complex(np.conj(den) / den * (al1 - np.conj(a2) * al0))
    d1, d2 = 1 - w1.real, 1 - tau.real
    if d1 == 0 or d2 == 0:
        raise DegenerateDataError("chain data denominator vanishes")
    t = np.zeros(N + 1)
    t[1] = -w1.imag / d1
    t[2] = -tau.imag / d2
    g = np.full(N + 1, 0.5)
    g[0] = abs(1 - w1) ** 2 / (2 * d1)
    g[1] = abs(1 - tau) ** 2 / (2 * d2)
    c = np.full(N + 2, 0.25)
    c[0] = 0.0
    c[1] = (1 - abs(w1) ** 2) * abs(1 - tau) ** 2 / (4 * d1 * d2)
    c[2] = (1 - abs(tau) ** 2) / (4 * d2)
    for arr in (t, c, g):
        arr.flags.writeable = False
    cd = ChainData(N, t, c, g, complex(w1), tau, ())
    r = tuple(r_polys(t, cd.ttrr_c(), N))
    return ChainData(N, t, c, g, complex(w1), tau, r)


def r_polys(t, c, N: int) -> list[CPoly]:
    """``R_0..R_N``; ``t[n]`` and ``c[n]`` are read at the recurrence index ``n``."""
    out = [CPoly.one()]
    prev = CPoly.zero()
    for n in range(1, N + 1):
        tn = float(t[n])
        step = CPoly((1 - 1j * tn, 1 + 1j * tn)) * out[-1]
        if n >= 2:
            step = step - 4 * float(c[n]) * prev.shift(1)
        prev = out[-1]
        out.append(step)
    return out


def scaling_T(tilde_fam: OpucFamily, n: int, ratio: complex | None = None) -> complex:
    """``T_{n-1} = prod_{j<n} (1 - r_j alpha~_j) / prod_{j<n} (1 - Re(r_j alpha~_j))``.

    With ``ratio`` given every factor uses that fixed value (normally
    ``Phi~_n(1) / Phi~*_n(1)``).  With ``ratio=None`` factor ``j`` uses the
    running value ``r_j = Phi~_j(1) / Phi~*_j(1)``, which is the form that
    reproduces the leading coefficient of ``R_n``.
    """
    al = np.asarray(tilde_fam.alpha[:n], dtype=complex)
    if ratio is None:
        r = np.array([_ratio(tilde_fam, j, 1.0) for j in range(n)])
    else:
        r = np.full(n, complex(ratio))
    num = 1 - r * al
    den = 1 - (r * al).real
    if np.any(den == 0):
        raise DegenerateDataError("a factor of the scaling denominator vanishes")
    return complex(np.prod(num) / np.prod(den))


def verify_r_consistency(base: OpucFamily, a, tilde_fam: OpucFamily, N: int) -> float:
    """Max coefficient gap between the recurrence ``R_n`` and ``T_{n-1} L_n(z; 1)``, ``n <= N``."""
    cd = chain_data(base, a, tilde_fam, N)
    worst = 0.0
    for n in range(N + 1):
        other = scaling_T(tilde_fam, n) * monic_L(tilde_fam, n, 1.0)
        diff = cd.r[n] - other
        if not diff.is_zero():
            worst = max(worst, float(np.max(np.abs(diff.coeffs))))
    return worst


def popuc_grid(zeta: complex, k: int = 16) -> np.ndarray:
    """``k`` points inside the disk, none equal to ``zeta``."""
    half = k // 2
    t = 2 * np.pi * (np.arange(half) + 0.5) / half
    return np.concatenate((0.35 * np.exp(1j * t), 0.7 * np.exp(1j * (t + 0.2))))


def popuc_kernel_identity(fam: OpucFamily, n: int, zeta: complex) -> float:
    """Max relative gap between ``K_n(z, zeta)`` and
    ``conj(Phi_{n+1}(zeta)) k_{n+1}^2 Phi^p_{n+1}(z; zeta) / (conj(zeta) (z - zeta))``
    on a 16-point grid; ``fam`` must reach degree ``n + 1``."""
    zeta = complex(zeta)
    z = popuc_grid(zeta)
    lhs = cd_kernel(fam, n, z, zeta)
    pp = popuc(fam, n + 1, zeta)
    rhs = np.conj(fam.phi[n + 1](zeta)) / fam.norm_sq[n + 1] * pp(z) / (np.conj(zeta) * (z - zeta))
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    return float(np.max(np.abs(lhs - rhs) / scale))
