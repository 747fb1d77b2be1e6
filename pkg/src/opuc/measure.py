"""Positive measures on the unit circle and their trigonometric moments.

Every measure is written as ``w(theta) dtheta`` on ``[0, 2*pi)``; the plain
arc-length measure ``|dz|`` is ``w = 1`` and the normalized Lebesgue measure
is ``w = 1/(2*pi)``.  Moments

    m_k = integral of exp(-i k theta) w(theta) dtheta

come from the uniform trapezoid rule, which is spectrally accurate for the
smooth periodic weights used here.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, ClassVar

import numpy as np

from ._util import complex_from_json, complex_to_json, parse_complex
from .cpoly import CPoly
from .errors import DegreeRangeError, InvalidMeasureError, NoCompanionError

DEFAULT_QUADN = 2**12
ESCALATED_QUADN = 2**16
ESCALATE_ABOVE = 0.9


class MeasureSpec:
    """Base class for declarative measure descriptions."""

    variant: ClassVar[str] = ""

    def weight(self, theta: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def pole_params(self) -> tuple[complex, ...]:
        return ()

    def default_quadN(self) -> int:
        if any(abs(p) > ESCALATE_ABOVE for p in self.pole_params()):
            return ESCALATED_QUADN
        return DEFAULT_QUADN

    def _params_json(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"variant": self.variant, **self._params_json()}

    @staticmethod
    def from_json(data: dict) -> MeasureSpec:
        kind = data["variant"]
        if kind == "Lebesgue":
            return Lebesgue(normalized=bool(data.get("normalized", False)))
        if kind == "BernsteinSzego":
            return BernsteinSzego(complex_from_json(data["a"]))
        if kind == "ChristoffelLebesgue":
            return ChristoffelLebesgue(complex_from_json(data["gamma"]))
        if kind == "RationalMarcellan":
            return RationalMarcellan(
                float(data["K"]),
                complex_from_json(data["beta"]),
                complex_from_json(data["chi1"]),
                complex_from_json(data["chi2"]),
            )
        if kind == "TildeRational":
            return TildeRational(
                float(data["K"]), complex_from_json(data["chi1"]), complex_from_json(data["chi2"])
            )
        if kind == "Custom":
            raise InvalidMeasureError("Custom measures carry a callback and cannot be loaded from JSON")
        raise InvalidMeasureError(f"unknown measure variant {kind!r}")


def _on_circle(theta):
    return np.exp(1j * np.asarray(theta, dtype=float))


def _check_inside(name, value, closed=False):
    r = abs(value)
    if (r > 1.0) if closed else (r >= 1.0):
        raise InvalidMeasureError(f"{name} = {value} must lie in the {'closed ' if closed else ''}unit disk")


@dataclass(frozen=True)
class Lebesgue(MeasureSpec):
    normalized: bool = False
    variant: ClassVar[str] = "Lebesgue"

    def weight(self, theta):
        c = 1.0 / (2 * np.pi) if self.normalized else 1.0
        return np.full(np.shape(theta), c)

    def _params_json(self):
        return {"normalized": self.normalized}


@dataclass(frozen=True)
class BernsteinSzego(MeasureSpec):
    """``w = 1/|e^{i theta} - a|^2``."""

    a: complex
    variant: ClassVar[str] = "BernsteinSzego"

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        _check_inside("a", self.a)

    def weight(self, theta):
        return 1.0 / np.abs(_on_circle(theta) - self.a) ** 2

    def pole_params(self):
        return (self.a,)

    def _params_json(self):
        return {"a": complex_to_json(self.a)}


@dataclass(frozen=True)
class ChristoffelLebesgue(MeasureSpec):
    """``w = |e^{i theta} - gamma|^2 / (2 pi)``."""

    gamma: complex
    variant: ClassVar[str] = "ChristoffelLebesgue"

    def __post_init__(self):
        object.__setattr__(self, "gamma", complex(self.gamma))

    def weight(self, theta):
        return np.abs(_on_circle(theta) - self.gamma) ** 2 / (2 * np.pi)

    def _params_json(self):
        return {"gamma": complex_to_json(self.gamma)}


@dataclass(frozen=True)
class RationalMarcellan(MeasureSpec):
    """``w = K |e^{i theta} - conj(beta)|^2 / (|e^{i theta} - chi1|^2 |e^{i theta} - chi2|^2)``."""

    K: float
    beta: complex
    chi1: complex
    chi2: complex
    variant: ClassVar[str] = "RationalMarcellan"

    def __post_init__(self):
        for name in ("beta", "chi1", "chi2"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not self.K > 0:
            raise InvalidMeasureError("K must be positive")
        if self.beta == 0:
            raise InvalidMeasureError("beta must be nonzero")
        _check_inside("beta", self.beta, closed=True)
        _check_inside("chi1", self.chi1)
        _check_inside("chi2", self.chi2)

    def weight(self, theta):
        z = _on_circle(theta)
        return (
            self.K
            * np.abs(z - np.conj(self.beta)) ** 2
            / (np.abs(z - self.chi1) ** 2 * np.abs(z - self.chi2) ** 2)
        )

    def pole_params(self):
        return (self.chi1, self.chi2)

    def _params_json(self):
        return {
            "K": self.K,
            "beta": complex_to_json(self.beta),
            "chi1": complex_to_json(self.chi1),
            "chi2": complex_to_json(self.chi2),
        }


@dataclass(frozen=True)
class TildeRational(MeasureSpec):
    """``w = K / (|e^{i theta} - chi1|^2 |e^{i theta} - chi2|^2)``."""

    K: float
    chi1: complex
    chi2: complex
    variant: ClassVar[str] = "TildeRational"

    def __post_init__(self):
        for name in ("chi1", "chi2"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not self.K > 0:
            raise InvalidMeasureError("K must be positive")
        _check_inside("chi1", self.chi1)
        _check_inside("chi2", self.chi2)

    def weight(self, theta):
        z = _on_circle(theta)
        return self.K / (np.abs(z - self.chi1) ** 2 * np.abs(z - self.chi2) ** 2)

    def pole_params(self):
        return (self.chi1, self.chi2)

    def _params_json(self):
        return {"K": self.K, "chi1": complex_to_json(self.chi1), "chi2": complex_to_json(self.chi2)}


@dataclass(frozen=True)
class Custom(MeasureSpec):
    """Arbitrary nonnegative weight; ``weight_fn`` must accept an array of angles."""

    weight_fn: Callable[[np.ndarray], np.ndarray] = field(compare=True)
    label: str = "custom"
    variant: ClassVar[str] = "Custom"

    def weight(self, theta):
        return np.broadcast_to(np.asarray(self.weight_fn(np.asarray(theta)), dtype=float), np.shape(theta))

    def _params_json(self):
        return {"label": self.label}


@dataclass(frozen=True)
class MomentTable:
    """Moments ``m_k`` for ``-kmax <= k <= kmax`` (stored at ``values[k + kmax]``)."""

    kmax: int
    values: np.ndarray
    quadN: int

    def m(self, k: int) -> complex:
        if abs(k) > self.kmax:
            raise DegreeRangeError(f"moment index {k} outside table range {self.kmax}")
        return complex(self.values[k + self.kmax])

    @property
    def m0(self) -> float:
        return float(self.values[self.kmax].real)

    def toeplitz(self, n: int) -> np.ndarray:
        """The ``(n+1) x (n+1)`` matrix ``T[k, j] = m_{k-j}``."""
        if n > self.kmax:
            raise DegreeRangeError(f"Toeplitz order {n} exceeds moment table range {self.kmax}")
        idx = np.arange(n + 1)
        return self.values[idx[:, None] - idx[None, :] + self.kmax]


@functools.lru_cache(maxsize=256)
def _cached_moments(spec: MeasureSpec, kmax: int, quadN: int) -> MomentTable:
    theta = 2 * np.pi * np.arange(quadN) / quadN
    w = np.asarray(spec.weight(theta), dtype=float)
    if not np.all(np.isfinite(w)):
        raise InvalidMeasureError(f"weight of {spec!r} is not finite at some quadrature node")
    if np.any(w < 0):
        raise InvalidMeasureError(f"weight of {spec!r} is negative at some quadrature node")
    k = np.arange(kmax + 1)
    pos = (2 * np.pi / quadN) * (np.exp(-1j * np.outer(k, theta)) @ w)
    pos[0] = pos[0].real
    vals = np.concatenate((np.conj(pos[:0:-1]), pos))
    vals.flags.writeable = False
    return MomentTable(kmax=kmax, values=vals, quadN=quadN)


def moments(spec: MeasureSpec, kmax: int, quadN: int | None = None) -> MomentTable:
    """Trapezoid-rule moments ``m_{-kmax} .. m_{kmax}`` of ``spec``."""
    if quadN is None:
        quadN = spec.default_quadN()
    quadN = int(quadN)
    if quadN < 4 * kmax or quadN < 4 or quadN & (quadN - 1):
        raise ValueError(f"quadN={quadN} must be a power of two and at least 4*kmax={4 * kmax}")
    return _cached_moments(spec, int(kmax), quadN)


def inner(tbl: MomentTable, p: CPoly, q: CPoly) -> complex:
    """``<p, q> = integral p(z) conj(q(z)) dmu = sum p_j conj(q_k) m_{k-j}``."""
    if p.is_zero() or q.is_zero():
        return 0j
    n = max(p.degree, q.degree)
    if n > tbl.kmax:
        raise DegreeRangeError(f"degree {n} exceeds moment table range {tbl.kmax}")
    pc = np.zeros(n + 1, dtype=complex)
    qc = np.zeros(n + 1, dtype=complex)
    pc[: len(p)] = p.coeffs
    qc[: len(q)] = q.coeffs
    return complex(np.conj(qc) @ tbl.toeplitz(n) @ pc)


def total_mass(tbl: MomentTable) -> float:
    return tbl.m0


def _parse_hint(hint):
    if isinstance(hint, tuple):
        return hint[0], (complex(hint[1]) if len(hint) > 1 else None)
    text = str(hint).strip()
    if ":" in text:
        kind, value = text.split(":", 1)
        return kind.strip(), parse_complex(value)
    return text, None


def companion_tilde(spec: MeasureSpec, a_seq_hint) -> MeasureSpec:
    """Measure making ``Phi_n - a_n Phi_{n-1}`` orthogonal, for known families.

    ``a_seq_hint`` names the coefficient rule: ``"marcellan"`` for the
    family's own Marcellan sequence, or ``"constant:<a>"`` / ``("constant", a)``.
    """
    kind, value = _parse_hint(a_seq_hint)
    if kind == "constant":
        if value is None or value == 0 or abs(value) >= 1:
            raise NoCompanionError(f"constant sequence needs 0 < |a| < 1, got {value}")
        if isinstance(spec, Lebesgue):
            return BernsteinSzego(value)
        if isinstance(spec, BernsteinSzego):
            return TildeRational(1.0, spec.a, value)
    elif kind == "marcellan":
        if isinstance(spec, ChristoffelLebesgue) and 0 < abs(spec.gamma) <= 1:
            return Lebesgue(normalized=True)
        if isinstance(spec, RationalMarcellan):
            return TildeRational(spec.K, spec.chi1, spec.chi2)
    raise NoCompanionError(f"no known companion measure for {spec!r} with hint {a_seq_hint!r}")
