"""Small parsing helpers shared by the measure presets and the CLI."""

from __future__ import annotations

import ast
import operator
import re

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def _normalise(text: str) -> str:
    s = text.strip().replace(" ", "")
    # "0.4i", "(n/(n+1))i" -> explicit product with the imaginary unit
    s = re.sub(r"(?<=[0-9.)])i\b", "*1j", s)
    s = re.sub(r"\bi\b", "1j", s)
    return s


def eval_expr(text: str, **names) -> complex:
    """Evaluate an arithmetic expression with complex literals.

    Only numbers, the given names, ``+ - * / **`` and parentheses are
    allowed.  ``i`` (or ``j``) denotes the imaginary unit, and a trailing
    ``i`` after a number or bracket means multiplication, so ``"1/6-i"`` and
    ``"(n/(n+1))i"`` both parse.
    """
    try:
        tree = ast.parse(_normalise(text), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        raise ValueError(f"unsupported expression: {text!r}")

    return complex(ev(tree))


def parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    return eval_expr(str(text))


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re_, im = v
    return complex(re_, im)
