"""Christoffel-Darboux kernels, kernel-type polynomials and kernel inequalities.

``K_n(z, w, mu) = sum_{k<=n} conj(phi_k(w)) phi_k(z)`` over orthonormal
``phi_k``; the kernel-type polynomial ``Kt_n`` is the same sum over the monic
``Phi_k``.  Every inequality check returns an :class:`InequalityReport`
whose sides are computed independently (moments for integrals, closed
expressions for bounds).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cpoly import CPoly
from .errors import DomainError, MissingCompanionError, PreconditionError
from .measure import MeasureSpec, inner, moments
from .szego import OpucFamily

PASS_RTOL = 1e-9
CIRCLE_TOL = 1e-8
FORMULA_GUARD = 1e-14
PRECOND_TOL = 1e-12
ZERO_ALPHA = 1e-12  # below this an alpha counts as vanishing (rounding from the moments)


@dataclass(frozen=True)
class KernelEval:
    n: int
    z: complex
    w: complex
    value: complex


@dataclass(frozen=True)
class InequalityReport:
    """``lhs <= rhs`` checked with slack ``rhs - lhs``."""

    name: str
    lhs: float
    rhs: float
    context: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -PASS_RTOL * max(1.0, abs(self.rhs))

    def to_json(self) -> dict:
        ctx = {k: _jsonable(v) for k, v in self.context.items()}
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "slack": float(self.slack),
            "pass": bool(self.passed),
            "context": ctx,
        }


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _table(fam: OpucFamily, kmax: int | None = None, quadN=None):
    if not isinstance(fam.spec, MeasureSpec):
        raise MissingCompanionError("family carries no measure; integrals need one")
    return moments(fam.spec, fam.N if kmax is None else kmax, quadN)


def _a_full(a, n: int) -> np.ndarray:
    """``a_0..a_n`` with ``a_0 = 0``; ``a`` is ``a_1, a_2, ..`` or a QuasiFamily."""
    if hasattr(a, "qphi"):
        return np.asarray(a.a[: n + 1], dtype=complex)
    a = np.asarray(a, dtype=complex).ravel()
    if len(a) < n:
        raise ValueError(f"need a_1..a_{n}, got {len(a)} values")
    return np.concatenate(([0j], a[:n]))


# kernels


def cd_kernel(fam: OpucFamily, n: int, z, w, method: str = "sum"):
    """Orthonormal CD kernel ``K_n(z, w)`` by direct sum or by the CD formula.

    The formula form is
    ``(conj(phi*_n(w)) phi*_n(z) - z conj(w) conj(phi_n(w)) phi_n(z)) / (1 - z conj(w))``.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if method == "sum":
        total = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for k in range(n + 1):
            p = fam.orthonormal(k)
            total = total + np.conj(p(w)) * p(z)
    elif method == "formula":
        den = 1 - z * np.conj(w)
        if np.any(np.abs(den) <= FORMULA_GUARD):
            raise DomainError("CD formula is singular at z * conj(w) = 1")
        p, ps = fam.orthonormal(n), fam.orthonormal_star(n)
        total = (np.conj(ps(w)) * ps(z) - z * np.conj(w) * np.conj(p(w)) * p(z)) / den
    else:
        raise ValueError(f"unknown method {method!r}")
    return complex(total) if total.ndim == 0 else total


def kernel_type(fam: OpucFamily, n: int, z, w):
    """``sum_{j<=n} conj(Phi_j(w)) Phi_j(z)`` with monic ``Phi_j``."""
    return _kernel_over(fam.phi, n, z, w)


def _kernel_over(polys, n, z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    total = np.zeros(np.broadcast(z, w).shape, dtype=complex)
    for j in range(n + 1):
        total = total + np.conj(polys[j](w)) * polys[j](z)
    return complex(total) if total.ndim == 0 else total


def kernel_poly(fam: OpucFamily, n: int, w: complex) -> CPoly:
    """``K_n(., w)`` as a polynomial in its first argument."""
    out = CPoly.zero()
    for k in range(n + 1):
        p = fam.orthonormal(k)
        out = out + np.conj(p(w)) * p
    return out


def reproduce(fam: OpucFamily, n: int, q: CPoly, z: complex, quadN=None) -> complex:
    """``int q(s) conj(K_n(s, z)) dmu(s)``, which equals ``q(z)`` when ``deg q <= n``."""
    tbl = _table(fam, max(n, q.degree), quadN)
    return complex(inner(tbl, q, kernel_poly(fam, n, z)))


# norm inequalities


def check_norm_inequalities(base: OpucFamily, qf, n: int, quadN=None) -> list[InequalityReport]:
    """Three norm bounds for a quasi family with companion measure.

    1. ``||Phi~_n||^2_mu <= (1 + |a_n|^2) m0(mu)``
    2. ``sqrt(m0(mu~)) prod_{j<=n} |a_j| <= ||Phi_n||_mu~``; the variant with
       ``m0(mu~)`` in place of its square root is reported in the context.
    3. ``||Phi~_n||^2_mu~ <= 2 (1 + |a_n|)^4 ||Phi_n||^2_mu~``
    """
    if qf.tilde_spec is None:
        raise MissingCompanionError("norm inequalities need the companion measure")
    if n < 1:
        raise ValueError("n must be at least 1")
    tbl = _table(base, n, quadN)
    ttbl = moments(qf.tilde_spec, n, quadN)
    a = qf.a
    q, p = qf.qphi[n], base.phi[n]
    m0 = tbl.m0
    m0t = ttbl.m0
    r1 = InequalityReport(
        "norm_quasi_mu",
        inner(tbl, q, q).real,
        (1 + abs(a[n]) ** 2) * m0,
        {"n": n},
    )
    prod = float(np.prod(np.abs(a[1 : n + 1])))
    norm_p = np.sqrt(inner(ttbl, p, p).real)
    literal = m0t * prod
    r2 = InequalityReport(
        "norm_phi_lower",
        np.sqrt(m0t) * prod,
        norm_p,
        {"n": n, "literal_lhs": literal, "literal_pass": bool(norm_p - literal >= -PASS_RTOL * max(1.0, norm_p))},
    )
    r3 = InequalityReport(
        "norm_quasi_mutilde",
        inner(ttbl, q, q).real,
        2 * (1 + abs(a[n])) ** 4 * norm_p**2,
        {"n": n},
    )
    return [r1, r2, r3]


# Lubinsky type bounds


def condition_sum(mu_fam: OpucFamily, tilde_fam: OpucFamily, a, n: int) -> float:
    """``sum_{j<=n} (1 + |a_j|^2) m0(mu) / ||Phi~_j||^2_mu~``."""
    af = _a_full(a, n)
    kt2 = 1.0 / np.asarray(tilde_fam.norm_sq[: n + 1], dtype=float)
    return float(np.sum(kt2 * (1 + np.abs(af) ** 2)) * mu_fam.m0)


def lubinsky_gap(mu_fam: OpucFamily, tilde_fam: OpucFamily, a, n: int, z: complex, w: complex):
    """Lubinsky-type bound without ordering of the measures.

    Returns ``(report, bracket)`` where ``bracket = 2 - condition_sum``.
    """
    d = cd_kernel(mu_fam, n, z, w) - cd_kernel(tilde_fam, n, z, w)
    bracket = 2.0 - condition_sum(mu_fam, tilde_fam, a, n)
    kzz = cd_kernel(mu_fam, n, z, z).real
    kzz_t = cd_kernel(tilde_fam, n, z, z).real
    kww = cd_kernel(mu_fam, n, w, w).real
    rhs = kww * (kzz - kzz_t * bracket)
    rep = InequalityReport("lubinsky_type", abs(d) ** 2, rhs, {"n": n, "z": complex(z), "w": complex(w), "bracket": bracket})
    return rep, bracket


def lubinsky_classical(fam1: OpucFamily, fam2: OpucFamily, n: int, z: complex, w: complex) -> InequalityReport:
    """Original inequality for ``mu1 <= mu2``:
    ``|K1(z,w) - K2(z,w)|^2 <= K1(w,w) (K1(z,z) - K2(z,z))``."""
    d = cd_kernel(fam1, n, z, w) - cd_kernel(fam2, n, z, w)
    rhs = cd_kernel(fam1, n, w, w).real * (cd_kernel(fam1, n, z, z).real - cd_kernel(fam2, n, z, z).real)
    return InequalityReport("lubinsky_classical", abs(d) ** 2, rhs, {"n": n, "z": complex(z), "w": complex(w)})


def l2_kernel_bound(mu_fam: OpucFamily, tilde_fam: OpucFamily, a, n: int, z: complex, quadN=None) -> InequalityReport:
    """``int |K_n(z, s, mu~)|^2 dmu(s) <= m0(mu) K_n(z, z, mu~) sum (1 + |a_j|^2) k~_j^2``."""
    tbl = _table(mu_fam, n, quadN)
    q = kernel_poly(tilde_fam, n, z)  # s -> K_n(s, z, mu~), same modulus
    lhs = inner(tbl, q, q).real
    rhs = cd_kernel(tilde_fam, n, z, z).real * condition_sum(mu_fam, tilde_fam, a, n)
    return InequalityReport("l2_kernel", lhs, rhs, {"n": n, "z": complex(z)})


# kernel-type polynomials


def subreproducing_check(fam: OpucFamily, p: CPoly, w: complex, n: int | None = None, quadN=None) -> InequalityReport:
    """``Re int conj(p) Kt_n(., w) dmu <= m0 Re p(w)`` under the sign preconditions.

    Requires ``Re <p, Phi_j> >= 0`` and ``Phi_j(w)`` real and nonnegative for
    every ``j <= n``; ``n`` defaults to ``deg p``.
    """
    n = p.degree if n is None else n
    if p.degree > n:
        raise PreconditionError(f"deg p = {p.degree} exceeds n = {n}")
    tbl = _table(fam, n, quadN)
    lhs = 0.0
    for j in range(n + 1):
        ip = inner(tbl, p, fam.phi[j])
        pw = fam.phi[j](w)
        if ip.real < -PRECOND_TOL * max(1.0, abs(ip)):
            raise PreconditionError(f"Re <p, Phi_{j}> = {ip.real:.3e} < 0", index=j)
        if abs(pw.imag) > PRECOND_TOL * max(1.0, abs(pw)) or pw.real < -PRECOND_TOL:
            raise PreconditionError(f"Phi_{j}(w) = {pw} is not real and nonnegative", index=j)
        # int conj(p) Phi_j dmu = conj(<p, Phi_j>)
        lhs += (np.conj(pw) * np.conj(ip)).real
    pw = p(w).real
    ctx = {"n": n, "w": complex(w), "m0": tbl.m0}
    if abs(tbl.m0 - 1) < 1e-12:
        ctx["probability_rhs"] = pw
    return InequalityReport("subreproducing", lhs, tbl.m0 * pw, ctx)


def kernel_square_bound(fam: OpucFamily, n: int, z: complex, quadN=None) -> InequalityReport:
    """``int Kt_n(z, eta) Kt_n(eta, z) dmu(eta) <= m0 Kt_n(z, z)``."""
    tbl = _table(fam, n, quadN)
    q = CPoly.zero()
    for j in range(n + 1):
        q = q + np.conj(fam.phi[j](z)) * fam.phi[j]
    lhs = inner(tbl, q, q).real
    rhs = tbl.m0 * kernel_type(fam, n, z, z).real
    return InequalityReport("kernel_square", lhs, rhs, {"n": n, "z": complex(z)})


def quasi_kernel_expansion(qf, n: int, z, w) -> tuple[complex, complex]:
    """``Kt_n(z, w)`` over ``Phi~_j`` directly and through the four sums in ``Phi_j``."""
    direct = _kernel_over(qf.qphi, n, z, w)
    phi = qf.base.phi
    a = qf.a

    def prev(j, x):
        return phi[j - 1](x) if j >= 1 else 0.0

    s = 0j
    for j in range(n + 1):
        s += phi[j](z) * np.conj(phi[j](w))
        s -= a[j] * prev(j, z) * np.conj(phi[j](w))
        s -= np.conj(a[j]) * phi[j](z) * np.conj(prev(j, w))
        s += abs(a[j]) ** 2 * prev(j, z) * np.conj(prev(j, w))
    return direct, complex(s)


def _logsumexp(x: np.ndarray) -> float:
    if len(x) == 0:
        return -np.inf
    m = np.max(x)
    return float(m + np.log(np.sum(np.exp(x - m))))


def diag_gap_bound(base: OpucFamily, qf, n: int, z: complex) -> list:
    """Two bounds on ``|Kt_n(z, z, mu~) - Kt_n(z, z, mu)|`` for ``|z| = 1``.

    The first is
    ``sum_j ((|alpha_{j-1}| + 1)^2 + 2|a_j|^2) exp(2 sum_{k<=j-2} |alpha_k|)``;
    the second ``M + 6 sum_{j>=3} e^{2j-2} / |alpha_{j-2}|^2`` with
    ``M = 2 e^4 (6 + sum_{j<=2} |a_j|^2)``.  The second entry is ``None``
    when a needed ``alpha`` vanishes (``|alpha| <= ZERO_ALPHA``).  Sums run over ``j = 0..n`` with
    ``alpha_{-1} = 0``; both are accumulated in log space.
    """
    if abs(abs(z) - 1) > CIRCLE_TOL:
        raise DomainError(f"|z| = {abs(z)} but the bounds need |z| = 1")
    al = np.abs(np.asarray(base.alpha, dtype=complex))
    a_all = np.abs(np.asarray(qf.a, dtype=complex))
    a = a_all[: n + 1]
    lhs = abs(_kernel_over(qf.qphi, n, z, z) - kernel_type(base, n, z, z))
    csum = np.concatenate(([0.0], np.cumsum(al)))  # csum[m] = sum_{k<m} |alpha_k|
    logs = []
    for j in range(n + 1):
        prev = al[j - 1] if j >= 1 else 0.0
        coef = (prev + 1) ** 2 + 2 * a[j] ** 2
        expo = 2 * csum[j - 1] if j >= 2 else 0.0
        logs.append(np.log(coef) + expo)
    r1 = InequalityReport("diag_gap_exp", lhs, float(np.exp(_logsumexp(np.array(logs)))), {"n": n, "z": complex(z)})
    need = al[1 : max(n - 1, 1)]
    if np.any(need <= ZERO_ALPHA):
        return [r1, None]
    M = 2 * np.e**4 * (6 + float(np.sum(a_all[:3] ** 2)))
    terms = [np.log(6.0) + 2 * j - 2 - 2 * np.log(al[j - 2]) for j in range(3, n + 1)]
    tail = float(np.exp(_logsumexp(np.array(terms)))) if terms else 0.0
    r2 = InequalityReport("diag_gap_ratio", lhs, M + tail, {"n": n, "z": complex(z), "M": M})
    return [r1, r2]
