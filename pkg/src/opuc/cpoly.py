"""Dense complex polynomials in ascending coefficient order.

``CPoly`` is the value type used for every polynomial family in the
package.  Instances are immutable; every arithmetic operation returns a new
polynomial with exact trailing zeros removed.
"""

from __future__ import annotations

import math
from numbers import Number

import numpy as np

from .errors import ConvergenceError, InvalidDegreeError

__all__ = [
    "CPoly",
    "add",
    "derivative",
    "divmod_poly",
    "eval_poly",
    "mul",
    "reverse",
    "roots",
    "scale",
    "sort_order",
    "sub",
]

# Root finder settings.
ROOT_STEP_TOL = 1e-13
ROOT_MAX_ITER = 500
ROOT_RESIDUAL_TOL = 1e-10
# Low-order coefficients this small (relative to the largest) are treated as
# an exact factor z**k; a perturbation of size eps splits a k-fold zero into a
# ring of radius eps**(1/k), which is far larger than the table tolerance.
ZERO_ROOT_RTOL = 64 * np.finfo(float).eps
_START_ANGLE = math.sqrt(2.0) - 1.0
SORT_DECIMALS = 9


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class CPoly:
    """Complex polynomial ``sum(coeffs[k] * z**k)``.

    The zero polynomial has an empty coefficient array and degree ``-1``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = np.array(coeffs, dtype=complex).ravel()
        c = _trim(c).copy()
        c.flags.writeable = False
        self._c = c

    # construction helpers
    @classmethod
    def zero(cls) -> CPoly:
        return cls(())

    @classmethod
    def one(cls) -> CPoly:
        return cls((1.0,))

    @classmethod
    def monomial(cls, k: int, coef: complex = 1.0) -> CPoly:
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coef
        return cls(c)

    @classmethod
    def from_roots(cls, rts, leading: complex = 1.0) -> CPoly:
        c = np.array([1.0 + 0j])
        for r in rts:
            c = np.concatenate(([0j], c)) - r * np.concatenate((c, [0j]))
        return cls(leading * c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> complex:
        return complex(self._c[-1]) if len(self._c) else 0j

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def __len__(self):
        return len(self._c)

    def __repr__(self):
        return f"CPoly({np.array2string(self._c, precision=6, separator=', ')})"

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __call__(self, z):
        return eval_poly(self, z)

    def __add__(self, other):
        return add(self, _as_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _as_poly(other))

    def __rsub__(self, other):
        return sub(_as_poly(other), self)

    def __neg__(self):
        return CPoly(-self._c)

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return mul(self, other)
        if isinstance(other, Number):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return scale(self, 1.0 / other)
        return NotImplemented

    def __divmod__(self, other):
        return divmod_poly(self, other)

    def shift(self, k: int = 1) -> CPoly:
        """Multiply by ``z**k``."""
        if self.is_zero():
            return self
        return CPoly(np.concatenate((np.zeros(k, dtype=complex), self._c)))

    def reverse(self, n: int | None = None) -> CPoly:
        return reverse(self, self.degree if n is None else n)

    def derivative(self) -> CPoly:
        return derivative(self)

    def roots(self) -> np.ndarray:
        return roots(self)

    def to_json(self):
        return [[float(v.real), float(v.imag)] for v in self._c]

    @classmethod
    def from_json(cls, data) -> CPoly:
        return cls([complex(re, im) for re, im in data])


def _as_poly(x) -> CPoly:
    if isinstance(x, CPoly):
        return x
    if isinstance(x, Number):
        return CPoly((x,))
    raise TypeError(f"cannot combine CPoly with {type(x).__name__}")


def eval_poly(p: CPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    if np.ndim(z) == 0:
        acc = 0j
        for ck in c[::-1]:
            acc = acc * z + ck
        return complex(acc)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for ck in c[::-1]:
        acc = acc * z + ck
    return acc


def reverse(p: CPoly, n: int) -> CPoly:
    """Return ``z**n * conj(p(1/conj(z)))``."""
    if p.degree > n:
        raise InvalidDegreeError(f"cannot reverse degree {p.degree} polynomial at order {n}")
    c = np.zeros(n + 1, dtype=complex)
    c[: len(p)] = p.coeffs
    return CPoly(np.conj(c[::-1]))


def add(p: CPoly, q: CPoly) -> CPoly:
    m = max(len(p), len(q))
    c = np.zeros(m, dtype=complex)
    c[: len(p)] += p.coeffs
    c[: len(q)] += q.coeffs
    return CPoly(c)


def sub(p: CPoly, q: CPoly) -> CPoly:
    m = max(len(p), len(q))
    c = np.zeros(m, dtype=complex)
    c[: len(p)] += p.coeffs
    c[: len(q)] -= q.coeffs
    return CPoly(c)


def scale(p: CPoly, s: complex) -> CPoly:
    return CPoly(p.coeffs * s)


def mul(p: CPoly, q: CPoly) -> CPoly:
    if p.is_zero() or q.is_zero():
        return CPoly.zero()
    return CPoly(np.convolve(p.coeffs, q.coeffs))


def derivative(p: CPoly) -> CPoly:
    if p.degree < 1:
        return CPoly.zero()
    return CPoly(p.coeffs[1:] * np.arange(1, len(p)))


def divmod_poly(p: CPoly, q: CPoly) -> tuple[CPoly, CPoly]:
    """Long division ``p = q * quot + rem`` with ``deg(rem) < deg(q)``."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by the zero polynomial")
    if p.degree < q.degree:
        return CPoly.zero(), p
    r = p.coeffs.copy()
    dq = q.degree
    lead = q.coeffs[-1]
    quot = np.zeros(p.degree - dq + 1, dtype=complex)
    for k in range(p.degree - dq, -1, -1):
        f = r[k + dq] / lead
        quot[k] = f
        r[k : k + dq + 1] -= f * q.coeffs
        r[k + dq] = 0.0
    return CPoly(quot), CPoly(r[:dq])


def _residuals(p: CPoly, z: np.ndarray) -> np.ndarray:
    d = p.degree
    return np.abs(eval_poly(p, z)) / (1.0 + abs(p.leading) * np.maximum(1.0, np.abs(z)) ** d)


def roots(p: CPoly, *, tol: float = ROOT_STEP_TOL, maxiter: int = ROOT_MAX_ITER) -> np.ndarray:
    """All ``deg(p)`` roots of ``p`` by Aberth-Ehrlich iteration.

    Roots are returned sorted by real part, then imaginary part.
    """
    if p.degree < 1:
        raise InvalidDegreeError("roots() needs a polynomial of degree >= 1")
    c = p.coeffs
    big = np.max(np.abs(c))
    k = 0
    while k < p.degree and abs(c[k]) <= ZERO_ROOT_RTOL * big:
        k += 1
    zeros = np.zeros(k, dtype=complex)
    q = c[k:] / c[-1]
    d = len(q) - 1
    if d == 0:
        return zeros
    if d == 1:
        found = np.array([-q[0]])
    else:
        found = _aberth(CPoly(q), tol, maxiter)
        res = _residuals(p, found)
        if np.any(res >= ROOT_RESIDUAL_TOL):
            raise ConvergenceError(
                f"root iteration failed: worst scaled residual {res.max():.3e}",
                best=found,
                residuals=res,
            )
    out = np.concatenate((zeros, found))
    return out[sort_order(out)]


def sort_order(z: np.ndarray) -> np.ndarray:
    """Indices sorting by real part, then imaginary part.

    Real parts are compared after rounding to ``SORT_DECIMALS`` places so
    that conjugate pairs whose real parts differ only by rounding noise stay
    in (minus, plus) order.
    """
    z = np.asarray(z, dtype=complex)
    return np.lexsort((z.imag, np.round(z.real, SORT_DECIMALS)))


def _aberth(q: CPoly, tol: float, maxiter: int) -> np.ndarray:
    d = q.degree
    dq = derivative(q)
    radius = 1.0 + np.max(np.abs(q.coeffs[:-1]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + _START_ANGLE))
    off = ~np.eye(d, dtype=bool)
    for _ in range(maxiter):
        pv = eval_poly(q, z)
        dv = eval_poly(dq, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            inv = np.where(off, 1.0 / np.where(off, diff, 1.0), 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        # a vanishing derivative only happens at an exact root
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            break
    return z
