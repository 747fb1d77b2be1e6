"""Named measures, coefficient rules and the combined setup used by the CLI."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._util import eval_expr, parse_complex
from .errors import NoCompanionError, NotApplicableError
from .marcellan import QuasiFamily, marcellan_a_seq, quasi_family
from .measure import (
    BernsteinSzego,
    ChristoffelLebesgue,
    Lebesgue,
    MeasureSpec,
    RationalMarcellan,
    companion_tilde,
)
from .szego import OpucFamily, family_from_measure

MAX_N = 64
PRESETS = ("lebesgue", "lebesgue-norm", "bernstein:<a>", "christoffel-1", "christoffel-i", "rational-example")
RATIONAL_EXAMPLE = RationalMarcellan(1.0, 0.8, 0.3, -0.4j)


def resolve_preset(name: str) -> MeasureSpec:
    key = name.strip()
    if key == "lebesgue":
        return Lebesgue(normalized=False)
    if key == "lebesgue-norm":
        return Lebesgue(normalized=True)
    if key.startswith("bernstein:"):
        return BernsteinSzego(parse_complex(key.split(":", 1)[1]))
    if key == "christoffel-1":
        return ChristoffelLebesgue(1.0)
    if key == "christoffel-i":
        return ChristoffelLebesgue(1j)
    if key == "rational-example":
        return RATIONAL_EXAMPLE
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def load_spec(preset: str | None = None, spec_json: str | None = None) -> MeasureSpec:
    if spec_json:
        text = spec_json
        if os.path.exists(spec_json):
            with open(spec_json) as fh:
                text = fh.read()
        return MeasureSpec.from_json(json.loads(text))
    if preset is None:
        raise ValueError("give a preset or a JSON measure spec")
    return resolve_preset(preset)


def default_quadN() -> int | None:
    env = os.environ.get("OPUC_QUADN")
    return int(env) if env else None


@dataclass(frozen=True)
class ARule:
    """A parsed coefficient rule; ``hint`` feeds :func:`companion_tilde`."""

    kind: str
    text: str
    value: Optional[complex] = None
    expr: Optional[str] = None
    values: Optional[tuple] = None

    def sequence(self, base: OpucFamily, N: int, tilde: OpucFamily | None = None) -> np.ndarray:
        if self.kind == "marcellan":
            return marcellan_a_seq(base, tilde)[:N]
        if self.kind == "constant":
            return np.full(N, self.value, dtype=complex)
        if self.kind == "seq":
            return np.array([eval_expr(self.expr, n=n) for n in range(1, N + 1)])
        if self.kind == "list":
            if len(self.values) < N:
                raise ValueError(f"list rule gives {len(self.values)} values, need {N}")
            return np.array(self.values[:N], dtype=complex)
        raise ValueError(f"unknown rule kind {self.kind!r}")

    @property
    def hint(self):
        if self.kind == "constant":
            return ("constant", self.value)
        return self.kind


def parse_a_rule(text: str) -> ARule:
    """``marcellan``, ``constant:<c>``, ``seq:<expr in n>`` (alias ``constant-seq:``),
    ``list:<v1>,<v2>,..`` or ``table1a`` (``a_n = 1/(n+1) - i``)."""
    s = text.strip()
    if s == "marcellan":
        return ARule("marcellan", s)
    if s == "table1a":
        return ARule("seq", s, expr="1/(n+1)-i")
    kind, _, rest = s.partition(":")
    if not rest:
        raise ValueError(f"cannot parse coefficient rule {text!r}")
    if kind == "constant":
        return ARule("constant", s, value=parse_complex(rest))
    if kind in ("seq", "constant-seq"):
        eval_expr(rest, n=1)  # fail early on a malformed expression
        return ARule("seq", s, expr=rest)
    if kind == "list":
        return ARule("list", s, values=tuple(parse_complex(v) for v in rest.split(",")))
    raise ValueError(f"cannot parse coefficient rule {text!r}")


@dataclass(frozen=True)
class Setup:
    spec: MeasureSpec
    base: OpucFamily
    a: Optional[np.ndarray]
    tilde_spec: Optional[MeasureSpec]
    tilde_fam: Optional[OpucFamily]
    qf: Optional[QuasiFamily]


def _companion(spec, rule: ARule, base, a):
    try:
        return companion_tilde(spec, rule.hint)
    except NoCompanionError:
        pass
    # a sequence typed out by hand may still be the Marcellan one
    if rule.kind != "marcellan":
        try:
            ref = marcellan_a_seq(base)[: len(a)]
        except NotApplicableError:
            return None
        if np.allclose(a, ref, rtol=0, atol=1e-12):
            try:
                return companion_tilde(spec, "marcellan")
            except NoCompanionError:
                return None
    return None


def build_setup(spec: MeasureSpec, N: int, a_rule: str | None = None, quadN: int | None = None) -> Setup:
    """Base family, coefficients and (when known) the companion family.

    Everything is built to degree ``N + 1`` so that checks at degree ``N``
    can reach one step further (POPUC and kernel identities need it).
    """
    if not 1 <= N <= MAX_N:
        raise ValueError(f"N must lie in 1..{MAX_N}")
    quadN = quadN if quadN is not None else default_quadN()
    base = family_from_measure(spec, N + 1, quadN)
    if a_rule is None:
        return Setup(spec, base, None, None, None, None)
    rule = parse_a_rule(a_rule)
    tilde_spec = tilde_fam = None
    if rule.kind == "marcellan":
        try:
            tilde_spec = companion_tilde(spec, "marcellan")
        except NoCompanionError:
            tilde_spec = None
        if tilde_spec is not None:
            tilde_fam = family_from_measure(tilde_spec, N + 1, quadN)
        a = rule.sequence(base, N + 1, tilde_fam)
    else:
        a = rule.sequence(base, N + 1)
        tilde_spec = _companion(spec, rule, base, a)
    qf = quasi_family(base, a, tilde_spec, quadN)
    return Setup(spec, base, a, tilde_spec, qf.tilde_fam, qf)
