"""Shared fixtures and exact-arithmetic oracles.

The oracles here deliberately avoid the package: polynomials are plain
lists of :class:`fractions.Fraction` (ascending powers) and integrals go
through :func:`scipy.integrate.quad`.
"""

from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from opuc.measure import RationalMarcellan, TildeRational
from opuc.presets import build_setup

RATIONAL = RationalMarcellan(1.0, 0.8, 0.3, -0.4j)
RATIONAL_TILDE = TildeRational(1.0, 0.3, -0.4j)

# (preset name, coefficient rule) pairs that lie in the Marcellan class
M2_CASES = [
    ("lebesgue", "constant:0.4"),
    ("christoffel-1", "marcellan"),
    ("christoffel-i", "marcellan"),
    ("rational-example", "marcellan"),
]
ALL_PRESETS = ["lebesgue", "lebesgue-norm", "bernstein:0.5", "christoffel-1", "christoffel-i", "rational-example"]


def frac_divmod(p, q):
    """Exact long division of Fraction coefficient lists."""
    p = list(p)
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    for k in range(len(p) - len(q), -1, -1):
        f = p[k + len(q) - 1] / q[-1]
        out[k] = f
        for i, c in enumerate(q):
            p[k + i] -= f * c
    return out, p[: len(q) - 1]


def christoffel_one_exact(m):
    """``Phi_m(z; 1)`` from ``(z^{m+1} - (1/(m+1)) sum_{k<=m} z^k) / (z - 1)``."""
    n = m + 1
    num = [-Fraction(1, n)] * n + [Fraction(1)]
    quot, rem = frac_divmod(num, [Fraction(-1), Fraction(1)])
    assert all(r == 0 for r in rem)
    return quot


def quad_integral(weight, f=lambda t: 1.0):
    """``int_0^{2 pi} f(t) w(t) dt`` split into real and imaginary parts."""
    re_ = quad(lambda t: np.real(f(t) * weight(t)), 0, 2 * np.pi, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
    im = quad(lambda t: np.imag(f(t) * weight(t)), 0, 2 * np.pi, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
    return complex(re_, im)


@pytest.fixture(scope="session")
def setups():
    """Setups keyed by (preset, rule, N), built once per session."""
    cache = {}

    def get(preset, rule=None, N=8):
        from opuc.presets import resolve_preset

        key = (preset, rule, N)
        if key not in cache:
            cache[key] = build_setup(resolve_preset(preset), N, rule)
        return cache[key]

    return get



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
